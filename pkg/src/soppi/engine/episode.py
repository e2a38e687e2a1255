import logging
import time
from collections.abc import Callable
from typing import Literal

import numpy as np

from soppi.domain.errors import ConfigurationError, DimensionError
from soppi.domain.models import ControllerConfig, CostSpec
from soppi.domain.records import TrialRecord
from soppi.dynamics.base import DynamicsSystem
from soppi.dynamics.rollout import rollout
from soppi.engine.controller import StepResult, mppi_step, require_jacobians, soppi_step
from soppi.sampling.noise import derive_step_seed

logger = logging.getLogger(__name__)

Algorithm = Literal["mppi", "soppi"]
TailInit = Callable[[np.ndarray], np.ndarray]

STEP_FUNCTIONS = {"mppi": mppi_step, "soppi": soppi_step}


class RecedingHorizonController:
    """Holds the nominal sequence between environment steps; one episode at a time."""

    def __init__(
        self,
        system: DynamicsSystem,
        cost_spec: CostSpec,
        cfg: ControllerConfig,
        algo: Algorithm,
        tail_init: TailInit | None = None,
    ):
        if algo not in STEP_FUNCTIONS:
            raise ConfigurationError(f"Unknown algorithm {algo!r}; expected one of {sorted(STEP_FUNCTIONS)}")
        if cfg.terminal_init == "ppo-hook" and tail_init is None:
            raise ConfigurationError("terminal_init='ppo-hook' needs a tail_init callable")
        if cost_spec.state_dim != system.state_dim or cost_spec.control_dim != system.control_dim:
            raise ConfigurationError(
                f"cost spec is {cost_spec.state_dim}x{cost_spec.control_dim}, "
                f"{system.name} is {system.state_dim}x{system.control_dim}"
            )
        if algo == "soppi":
            require_jacobians(system, cfg)
        self.system = system
        self.cost_spec = cost_spec
        self.cfg = cfg
        self.algo = algo
        self.tail_init = tail_init
        self._step_fn = STEP_FUNCTIONS[algo]
        self.reset()

    def reset(self, u_init=None) -> None:
        shape = (self.cfg.horizon, self.system.control_dim)
        self.nominal = np.zeros(shape) if u_init is None else np.array(u_init, dtype=float)
        if self.nominal.shape != shape:
            raise DimensionError(f"U_init must be {shape}, got {self.nominal.shape}")

    def plan(self, state, step_index: int) -> StepResult:
        seed = derive_step_seed(self.cfg.seed, step_index)
        return self._step_fn(self.system, self.cost_spec, self.cfg, state, self.nominal, seed=seed)

    def shift(self, result: StepResult, next_state: np.ndarray) -> None:
        """U_init <- [u*_{1:N}, tail]."""
        shifted = np.empty_like(result.u_star)
        shifted[:-1] = result.u_star[1:]
        if self.cfg.terminal_init == "zero":
            shifted[-1] = 0.0
        else:
            end_state = next_state if self.cfg.horizon == 1 else rollout(self.system, next_state, result.u_star[1:])[-1]
            shifted[-1] = np.asarray(self.tail_init(end_state), dtype=float).reshape(self.system.control_dim)
        self.nominal = shifted


def run_episode(
    system: DynamicsSystem,
    cost_spec: CostSpec,
    cfg: ControllerConfig,
    x0,
    algo: Algorithm,
    num_steps: int,
    tail_init: TailInit | None = None,
    record_timing: bool = True,
) -> TrialRecord:
    if num_steps < 1:
        raise ValueError(f"num_steps must be >= 1, got {num_steps}")
    controller = RecedingHorizonController(system, cost_spec, cfg, algo, tail_init)
    state, _ = system.check_inputs(x0, np.zeros(system.control_dim))

    states = np.empty((num_steps + 1, system.state_dim))
    controls = np.empty((num_steps, system.control_dim))
    wall_times = np.zeros(num_steps)
    states[0] = state

    for index in range(num_steps):
        started = time.perf_counter()
        result = controller.plan(state, index)
        elapsed = time.perf_counter() - started
        state = system.step(state, result.applied)
        controller.shift(result, state)

        states[index + 1] = state
        controls[index] = result.applied
        if record_timing:
            wall_times[index] = elapsed
        logger.debug("%s step %d: min cost %.6g, applied %s", algo, index, result.min_cost, result.applied.tolist())

    logger.info("%s episode finished: %d steps, final state %s", algo, num_steps, state.tolist())
    times = system.dt * np.arange(num_steps + 1)
    return TrialRecord(times=times, states=states, controls=controls, step_wall_times=wall_times)
