import csv
import logging
from pathlib import Path

from pydantic import ValidationError

from soppi.domain.errors import ConfigurationError
from soppi.domain.records import TrialRecord
from soppi.repository.record_store import read_record, write_record
from soppi.schemas.manifest import RunManifest
from soppi.schemas.summary import PValueRow, Summary, SummaryRow

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"
SUMMARY_FILE = "summary.csv"
P_VALUE_FILE = "p_values.csv"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


class RunStore:
    """Layout of one run directory: manifest, records/<label>/trial_<i>.csv, summary tables."""

    def __init__(self, run_dir: str | Path):
        self.run_dir = Path(run_dir)

    @property
    def manifest_path(self) -> Path:
        return self.run_dir / MANIFEST_FILE

    def record_path(self, label: str, trial: int) -> Path:
        return self.run_dir / "records" / label / f"trial_{trial}.csv"

    def save_manifest(self, manifest: RunManifest) -> Path:
        self.run_dir.mkdir(parents=True, exist_ok=True)
        self.manifest_path.write_text(manifest.model_dump_json(indent=2, by_alias=True), encoding="utf-8")
        return self.manifest_path

    def load_manifest(self) -> RunManifest:
        if not self.manifest_path.exists():
            raise FileNotFoundError(f"Manifest not found: {self.manifest_path}")
        try:
            return RunManifest.model_validate_json(self.manifest_path.read_text(encoding="utf-8"))
        except ValidationError as exc:
            raise ConfigurationError(f"Invalid run manifest {self.manifest_path}:\n{exc}") from exc

    def save_record(self, label: str, trial: int, record: TrialRecord) -> Path:
        return write_record(self.record_path(label, trial), record)

    def load_groups(self, manifest: RunManifest) -> dict[str, list[TrialRecord]]:
        groups: dict[str, list[TrialRecord]] = {variant.label: [] for variant in manifest.config.experiment.algos}
        for entry in sorted(manifest.trials, key=lambda item: (item.label, item.trial)):
            if entry.status != "complete":
                logger.warning("skipping %s trial %d: %s", entry.label, entry.trial, entry.error)
                continue
            groups[entry.label].append(read_record(self.run_dir / entry.record_file))
        return {label: records for label, records in groups.items() if records}

    def save_summary(self, summary: Summary) -> tuple[Path, Path]:
        summary_path = self.run_dir / SUMMARY_FILE
        p_value_path = self.run_dir / P_VALUE_FILE
        self._write_rows(summary_path, list(SummaryRow.model_fields), [row.model_dump() for row in summary.rows])
        self._write_rows(p_value_path, list(PValueRow.model_fields), [row.model_dump() for row in summary.p_values])
        return summary_path, p_value_path

    def load_summary(self) -> Summary:
        return Summary(
            rows=[SummaryRow.model_validate(row) for row in self._read_rows(self.run_dir / SUMMARY_FILE)],
            p_values=[PValueRow.model_validate(row) for row in self._read_rows(self.run_dir / P_VALUE_FILE)],
        )

    @staticmethod
    def _write_rows(path: Path, columns: list[str], rows: list[dict]) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_cell(row[column]) for column in columns])

    @staticmethod
    def _read_rows(path: Path) -> list[dict]:
        if not path.exists():
            raise FileNotFoundError(f"Summary file not found: {path}")
        with path.open("r", encoding="utf-8", newline="") as fh:
            return [{key: (value if value != "" else None) for key, value in row.items()} for row in csv.DictReader(fh)]
