import numpy as np

from soppi.domain.errors import DimensionError
from soppi.dynamics.base import DynamicsSystem, Jacobians


def step(system: DynamicsSystem, state, control) -> np.ndarray:
    return system.step(state, control)


def jacobians(system: DynamicsSystem, state, control) -> Jacobians:
    return system.jacobians(state, control)


def rollout(system: DynamicsSystem, x0, controls, horizon: int | None = None) -> np.ndarray:
    """Roll `controls` (..., N, m) forward from `x0`; returns (..., N+1, n) with states[..., 0, :] = x0.

    Only the inputs are validated. A sample that diverges keeps propagating inf/nan so the
    caller can discard it instead of aborting the whole batch.
    """
    controls = np.asarray(controls, dtype=float)
    if controls.ndim < 2:
        raise DimensionError(f"controls must be (..., N, m), got shape {controls.shape}")
    steps = controls.shape[-2]
    if horizon is not None and steps != horizon:
        raise DimensionError(f"expected {horizon} controls, got {steps}")
    if steps < 1:
        raise DimensionError("rollout needs at least one control")
    x0, _ = system.check_inputs(x0, controls[..., 0, :])

    batch = np.broadcast_shapes(x0.shape[:-1], controls.shape[:-2])
    states = np.empty(batch + (steps + 1, system.state_dim))
    states[..., 0, :] = x0
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(steps):
            states[..., t + 1, :] = system._step(states[..., t, :], controls[..., t, :])
    return states
