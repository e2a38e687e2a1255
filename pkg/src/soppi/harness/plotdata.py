"""Per-signal time series tables (t, trial_0, trial_1, ...) for external plotting tools."""

import csv
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np

from soppi.domain.records import TrialRecord
from soppi.dynamics.base import DynamicsSystem
from soppi.repository.record_store import format_value


def _signals(system: DynamicsSystem, records: Sequence[TrialRecord]):
    for index, name in enumerate(system.state_names):
        yield name, records[0].times, [record.states[:, index] for record in records]
    for index, name in enumerate(system.control_names):
        yield name, records[0].times[:-1], [record.controls[:, index] for record in records]


def emit_plot_data(groups: Mapping[str, Sequence[TrialRecord]], system: DynamicsSystem, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    written: list[Path] = []
    for label, records in groups.items():
        if not records:
            continue
        lengths = {record.num_steps for record in records}
        if len(lengths) != 1:
            raise ValueError(f"{label}: records differ in length {sorted(lengths)}")
        for name, times, columns in _signals(system, records):
            path = out_dir / label / f"{name}.csv"
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["t", *(f"trial_{i}" for i in range(len(columns)))])
                for row, t in enumerate(times):
                    writer.writerow([format_value(t), *(format_value(column[row]) for column in columns)])
            written.append(path)
    return written


def read_plot_table(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Returns (times, values) with values shaped (rows, trials)."""
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(cell) for cell in row] for row in reader]).reshape(-1, len(header))
    return data[:, 0], data[:, 1:]
