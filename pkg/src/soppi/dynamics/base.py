from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from soppi.domain.errors import DimensionError, NonFiniteError


@dataclass(frozen=True)
class Jacobians:
    d_next_d_state: np.ndarray
    d_next_d_control: np.ndarray


class DynamicsSystem(ABC):
    """Discrete-time system x_{t+1} = F(x_t, u_t) with exact control/state Jacobians.

    Every method accepts leading batch dimensions: states are (..., n), controls (..., m).
    Implementations are stateless after construction, so one instance can be shared by
    any number of threads.
    """

    name: str = ""
    state_names: tuple[str, ...] = ()
    control_names: tuple[str, ...] = ()
    angle_dims: tuple[int, ...] = ()
    differentiable: bool = True

    def __init__(self, dt: float):
        if dt <= 0:
            raise ValueError(f"dt must be > 0, got {dt}")
        self.dt = float(dt)

    @property
    def state_dim(self) -> int:
        return len(self.state_names)

    @property
    def control_dim(self) -> int:
        return len(self.control_names)

    def step(self, state, control) -> np.ndarray:
        state, control = self.check_inputs(state, control)
        return self._step(state, control)

    def jacobians(self, state, control) -> Jacobians:
        state, control = self.check_inputs(state, control)
        return self._jacobians(state, control)

    def linearize(self, state, control) -> tuple[np.ndarray, Jacobians]:
        """Next state and Jacobians at (state, control) from a single input check."""
        state, control = self.check_inputs(state, control)
        return self._linearize(state, control)

    def _linearize(self, state: np.ndarray, control: np.ndarray) -> tuple[np.ndarray, Jacobians]:
        return self._step(state, control), self._jacobians(state, control)

    def check_inputs(self, state, control) -> tuple[np.ndarray, np.ndarray]:
        state = np.asarray(state, dtype=float)
        control = np.asarray(control, dtype=float)
        if state.shape[-1:] != (self.state_dim,):
            raise DimensionError(f"{self.name}: state must end in dimension {self.state_dim}, got {state.shape}")
        if control.shape[-1:] != (self.control_dim,):
            raise DimensionError(
                f"{self.name}: control must end in dimension {self.control_dim}, got {control.shape}"
            )
        if not np.all(np.isfinite(state)):
            raise NonFiniteError(f"{self.name}: state has non-finite entries")
        if not np.all(np.isfinite(control)):
            raise NonFiniteError(f"{self.name}: control has non-finite entries")
        return state, control

    @abstractmethod
    def _step(self, state: np.ndarray, control: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _jacobians(self, state: np.ndarray, control: np.ndarray) -> Jacobians: ...
