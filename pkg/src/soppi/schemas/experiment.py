import math
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from soppi.domain.models import (
    CartPoleParams,
    ControllerConfig,
    CostSpec,
    DoubleIntegratorParams,
    MseCriterion,
    PendulumParams,
    SettlingCriterion,
    SvgdConfig,
)
from soppi.dynamics.base import DynamicsSystem
from soppi.dynamics.registry import build_system
from soppi.sampling.noise import SEED_LIMIT


class CartPoleSystem(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: Literal["cartpole"]
    params: CartPoleParams = Field(default_factory=CartPoleParams)


class DoubleIntegratorSystem(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: Literal["double_integrator"]
    params: DoubleIntegratorParams = Field(default_factory=DoubleIntegratorParams)


class PendulumSystem(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: Literal["pendulum"]
    params: PendulumParams = Field(default_factory=PendulumParams)


SystemConfig = Annotated[CartPoleSystem | DoubleIntegratorSystem | PendulumSystem, Field(discriminator="id")]

DEFAULT_INITIAL_STATES = {
    "cartpole": [0.0, 0.0, math.pi, 0.0],
    "double_integrator": [1.0, 0.0],
    "pendulum": [0.0, 0.0],
}


def default_metrics(system_id: str) -> tuple[list[MseCriterion], list[SettlingCriterion]]:
    if system_id == "cartpole":
        return (
            [
                MseCriterion(name="mse_x", signal_index=0),
                MseCriterion(name="mse_theta", signal_index=2, wrap_angle=True),
            ],
            [
                SettlingCriterion(name="ts_x_0.25m", signal_index=0, band=0.25),
                SettlingCriterion(name="ts_x_0.5m", signal_index=0, band=0.5),
                *(
                    SettlingCriterion(
                        name=f"ts_theta_{pct}pct",
                        signal_index=2,
                        band=pct / 100.0,
                        mode="fraction-of-range",
                        wrap_angle=True,
                    )
                    for pct in (2, 5, 10)
                ),
            ],
        )
    if system_id == "pendulum":
        return [MseCriterion(name="mse_theta", signal_index=0, wrap_angle=True)], [
            SettlingCriterion(name="ts_theta_5pct", signal_index=0, band=0.05, mode="fraction-of-range", wrap_angle=True)
        ]
    return [MseCriterion(name="mse_position", signal_index=0)], [
        SettlingCriterion(name="ts_position_0.05", signal_index=0, band=0.05)
    ]


class ControllerSection(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    num_samples: int = Field(default=500, ge=1)
    horizon: int = Field(default=80, ge=1)
    lambda_: float = Field(default=10.0, alias="lambda", gt=0)
    sigma: float | list[float] = 10.0
    terminal_init: Literal["zero", "ppo-hook"] = "zero"

    @field_validator("sigma")
    @classmethod
    def _positive_sigma(cls, value):
        values = [value] if isinstance(value, (int, float)) else value
        if not values or any(not math.isfinite(v) or v <= 0 for v in values):
            raise ValueError("sigma must be finite and > 0 in every control dimension")
        return value


class AlgoVariant(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: str
    algo: Literal["mppi", "soppi"]
    num_samples: int | None = Field(default=None, ge=1)
    svgd_iterations: int | None = Field(default=None, ge=0)
    svgd_step_size: float | None = Field(default=None, gt=0)


class ExperimentSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    algos: list[AlgoVariant] = Field(min_length=1)
    n_trials: int = Field(default=5, ge=1)
    base_seed: int = Field(default=0, ge=0)
    duration: float = Field(default=20.0, gt=0)
    output_dir: str | None = None
    x0: list[float] | None = None
    mse_signals: list[MseCriterion] = Field(default_factory=list)
    settling_criteria: list[SettlingCriterion] = Field(default_factory=list)

    @field_validator("algos", mode="before")
    @classmethod
    def _expand_names(cls, value):
        if isinstance(value, list):
            return [{"label": item, "algo": item} if isinstance(item, str) else item for item in value]
        return value

    @field_validator("algos")
    @classmethod
    def _unique_labels(cls, value: list[AlgoVariant]) -> list[AlgoVariant]:
        labels = [variant.label for variant in value]
        if len(set(labels)) != len(labels):
            raise ValueError(f"algo labels must be unique, got {labels}")
        return value

    @model_validator(mode="after")
    def _seeds_fit_in_64_bits(self) -> "ExperimentSection":
        last = self.base_seed + self.n_trials - 1
        if last >= SEED_LIMIT:
            raise ValueError(f"trial seeds run up to {last}, which does not fit in 64 bits")
        return self


class ExperimentConfig(BaseModel):
    """The JSON experiment file: sections system, cost, controller, svgd, experiment."""

    model_config = ConfigDict(extra="forbid")

    system: SystemConfig
    cost: CostSpec
    controller: ControllerSection = Field(default_factory=ControllerSection)
    svgd: SvgdConfig = Field(default_factory=SvgdConfig)
    experiment: ExperimentSection

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ExperimentConfig":
        system = self.build_system()
        if self.cost.state_dim != system.state_dim or self.cost.control_dim != system.control_dim:
            raise ValueError(
                f"cost is {self.cost.state_dim}x{self.cost.control_dim} but {system.name} "
                f"is {system.state_dim}x{system.control_dim}"
            )
        if self.cost.reference is not None and self.cost.reference.shape[0] != self.controller.horizon:
            raise ValueError(
                f"u_ref has {self.cost.reference.shape[0]} steps, horizon is {self.controller.horizon}"
            )
        if self.experiment.x0 is not None and len(self.experiment.x0) != system.state_dim:
            raise ValueError(f"x0 must have {system.state_dim} entries")
        mse_signals, settling = self.metric_criteria()
        for criterion in [*mse_signals, *settling]:
            if criterion.signal_index >= system.state_dim:
                raise ValueError(f"metric {criterion.name} refers to state {criterion.signal_index}")
        if isinstance(self.controller.sigma, list) and len(self.controller.sigma) != system.control_dim:
            raise ValueError(f"sigma must have {system.control_dim} entries")
        return self

    def build_system(self) -> DynamicsSystem:
        return build_system(self.system.id, self.system.params)

    def initial_state(self) -> np.ndarray:
        return np.asarray(self.experiment.x0 or DEFAULT_INITIAL_STATES[self.system.id], dtype=float)

    def num_steps(self) -> int:
        return max(1, int(round(self.experiment.duration / self.system.params.dt)))

    def metric_criteria(self) -> tuple[list[MseCriterion], list[SettlingCriterion]]:
        defaults = default_metrics(self.system.id)
        return (
            self.experiment.mse_signals or defaults[0],
            self.experiment.settling_criteria or defaults[1],
        )

    def variant(self, label: str) -> AlgoVariant:
        for item in self.experiment.algos:
            if item.label == label:
                return item
        raise KeyError(f"unknown algo label {label!r}")

    def trial_seed(self, trial: int) -> int:
        # paired across algorithms: trial i always uses base_seed + i
        return self.experiment.base_seed + trial

    def controller_config(self, variant: AlgoVariant, seed: int) -> ControllerConfig:
        svgd = self.svgd.model_copy(
            update={
                key: value
                for key, value in (("iterations", variant.svgd_iterations), ("step_size", variant.svgd_step_size))
                if value is not None
            }
        )
        if variant.algo == "mppi":
            svgd = svgd.model_copy(update={"iterations": 0})
        return ControllerConfig(
            num_samples=variant.num_samples or self.controller.num_samples,
            horizon=self.controller.horizon,
            lambda_=self.controller.lambda_,
            sigma=self.controller.sigma,
            seed=seed,
            terminal_init=self.controller.terminal_init,
            svgd=SvgdConfig.model_validate(svgd.model_dump()),
        )
