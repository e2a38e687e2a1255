from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TrialRecord:
    """Per-timestep log of one episode: T applied controls and T+1 realised states."""

    times: np.ndarray
    states: np.ndarray
    controls: np.ndarray
    step_wall_times: np.ndarray

    def __post_init__(self) -> None:
        steps = self.controls.shape[0]
        if self.states.shape[0] != steps + 1 or self.times.shape[0] != steps + 1:
            raise ValueError(
                f"record needs T+1 states/times for T controls, got "
                f"{self.states.shape[0]} states, {self.times.shape[0]} times, {steps} controls"
            )
        if self.step_wall_times.shape[0] != steps:
            raise ValueError("step_wall_times must have one entry per control")
        if steps and not np.all(np.diff(self.times) > 0):
            raise ValueError("record times must be strictly increasing")

    @property
    def num_steps(self) -> int:
        return self.controls.shape[0]

    def signal(self, index: int) -> np.ndarray:
        return self.states[:, index]
