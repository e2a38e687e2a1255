import logging
import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseSettings):
    log_level: str = "INFO"
    max_workers: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    record_timing: bool = True
    output_root: str = "runs"
    config_file: str = "data/configs/cartpole_swingup.json"

    model_config = SettingsConfigDict(
        env_prefix="SOPPI_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(level=(level or settings.log_level).upper(), format=LOG_FORMAT, force=True)
