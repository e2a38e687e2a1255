import csv
from pathlib import Path

import numpy as np

from soppi.domain.records import TrialRecord


def format_value(value: float) -> str:
    return f"{value:.17g}"


def record_header(state_dim: int, control_dim: int) -> list[str]:
    return ["t", *(f"state_{i}" for i in range(state_dim)), *(f"u_{j}" for j in range(control_dim)), "wall_ms"]


def write_record(path: str | Path, record: TrialRecord) -> Path:
    """One row per recorded state; the last row has no control or wall time."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    state_dim = record.states.shape[1]
    control_dim = record.controls.shape[1]
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(record_header(state_dim, control_dim))
        for index in range(record.num_steps + 1):
            row = [format_value(record.times[index]), *map(format_value, record.states[index])]
            if index < record.num_steps:
                row += [*map(format_value, record.controls[index]), format_value(1000.0 * record.step_wall_times[index])]
            else:
                row += [""] * (control_dim + 1)
            writer.writerow(row)
    return path


def read_record(path: str | Path) -> TrialRecord:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Record file not found: {path}")

    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)

    state_cols = [i for i, name in enumerate(header) if name.startswith("state_")]
    control_cols = [i for i, name in enumerate(header) if name.startswith("u_")]
    wall_col = header.index("wall_ms")
    steps = len(rows) - 1
    return TrialRecord(
        times=np.array([float(row[0]) for row in rows]),
        states=np.array([[float(row[i]) for i in state_cols] for row in rows]).reshape(len(rows), len(state_cols)),
        controls=np.array([[float(row[i]) for i in control_cols] for row in rows[:steps]]).reshape(
            steps, len(control_cols)
        ),
        step_wall_times=np.array([float(row[wall_col]) / 1000.0 for row in rows[:steps]]),
    )
