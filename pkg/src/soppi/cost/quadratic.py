import numpy as np

from soppi.domain.errors import DimensionError
from soppi.domain.models import CostSpec


def wrap_angle(value):
    """Map angles to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(value, dtype=float), 2.0 * np.pi)


def _check_dim(name: str, array: np.ndarray, expected: int) -> None:
    if array.shape[-1:] != (expected,):
        raise DimensionError(f"{name} must end in dimension {expected}, got shape {array.shape}")


def _quadratic(error: np.ndarray, weight: np.ndarray) -> np.ndarray:
    return np.einsum("...i,ij,...j->...", error, weight, error)


def state_error(spec: CostSpec, state) -> np.ndarray:
    state = np.asarray(state, dtype=float)
    _check_dim("state", state, spec.state_dim)
    error = state - spec.target
    if spec.angle_dims:
        error = np.where(spec.angle_mask, wrap_angle(error), error)
    return error


def control_error(spec: CostSpec, control, t: int | None = 0) -> np.ndarray:
    control = np.asarray(control, dtype=float)
    _check_dim("control", control, spec.control_dim)
    reference = spec.reference
    if reference is None:
        return control
    if t is None or not 0 <= t < reference.shape[0]:
        raise DimensionError(f"time index {t} outside reference horizon {reference.shape[0]}")
    return control - reference[t]


def running_cost(spec: CostSpec, state, control, t: int = 0) -> np.ndarray:
    e_x = state_error(spec, state)
    e_u = control_error(spec, control, t)
    return _quadratic(e_x, spec.q_matrix) + _quadratic(e_u, spec.r_matrix)


def terminal_cost(spec: CostSpec, state) -> np.ndarray:
    return _quadratic(state_error(spec, state), spec.q_terminal_matrix)


def cost_to_go(spec: CostSpec, states, controls) -> np.ndarray:
    """S(tau) = terminal(x_N) + sum_t running(x_t, u_t, t) for (..., N+1, n) states and (..., N, m) controls."""
    states = np.asarray(states, dtype=float)
    controls = np.asarray(controls, dtype=float)
    if states.ndim < 2 or controls.ndim < 2:
        raise DimensionError("states and controls must be sequences")
    steps = controls.shape[-2]
    if states.shape[-2] != steps + 1:
        raise DimensionError(f"need {steps + 1} states for {steps} controls, got {states.shape[-2]}")

    total = terminal_cost(spec, states[..., steps, :])
    for t in range(steps):
        total = total + running_cost(spec, states[..., t, :], controls[..., t, :], t)
    return total


def running_cost_gradients(spec: CostSpec, state, control, t: int = 0) -> tuple[np.ndarray, np.ndarray]:
    # Angle wrapping is piecewise a shift, so its local derivative is the identity.
    e_x = state_error(spec, state)
    e_u = control_error(spec, control, t)
    d_state = 2.0 * np.einsum("ij,...j->...i", spec.q_matrix, e_x)
    d_control = 2.0 * np.einsum("ij,...j->...i", spec.r_matrix, e_u)
    return d_state, d_control


def default_cartpole_cost() -> CostSpec:
    q = [1.25, 1.0, 12.0, 0.25]
    return CostSpec(
        q=q,
        r=[1e-3],
        q_terminal=[10.0 * w for w in q],
        x_target=[0.0, 0.0, 0.0, 0.0],
        angle_dims=[2],
    )
