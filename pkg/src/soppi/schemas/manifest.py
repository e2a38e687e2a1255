from datetime import datetime
from typing import Literal

from pydantic import BaseModel, Field

from soppi.schemas.experiment import ExperimentConfig


class TrialEntry(BaseModel):
    label: str
    algo: str
    trial: int
    seed: int
    record_file: str
    status: Literal["complete", "failed"] = "complete"
    error: str | None = None
    started_at: datetime | None = None
    finished_at: datetime | None = None


class RunManifest(BaseModel):
    """Everything needed to bit-reproduce a battery: config snapshot, version, per-trial seeds."""

    config: ExperimentConfig
    code_version: str
    record_timing: bool = True
    status: Literal["running", "complete", "incomplete"] = "running"
    error: str | None = None
    created_at: datetime
    finished_at: datetime | None = None
    trials: list[TrialEntry] = Field(default_factory=list)
