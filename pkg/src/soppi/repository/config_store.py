import json
from pathlib import Path

from pydantic import ValidationError

from soppi.domain.errors import ConfigurationError
from soppi.schemas.experiment import ExperimentConfig


class ExperimentConfigStore:
    def __init__(self, config_file: str | Path):
        self.config_file = Path(config_file)

    def load(self) -> ExperimentConfig:
        if not self.config_file.exists():
            raise FileNotFoundError(f"Config file not found: {self.config_file}")

        with self.config_file.open("r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigurationError(f"{self.config_file} is not valid JSON: {exc}") from exc

        try:
            return ExperimentConfig.model_validate(data)
        except ValidationError as exc:
            raise ConfigurationError(f"Invalid experiment config {self.config_file}:\n{exc}") from exc
