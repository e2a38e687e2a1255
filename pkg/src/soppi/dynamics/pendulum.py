import numpy as np

from soppi.domain.models import PendulumParams
from soppi.dynamics.base import DynamicsSystem, Jacobians


class Pendulum(DynamicsSystem):
    """Torque-driven pendulum, theta = 0 hanging, viscous damping."""

    name = "pendulum"
    state_names = ("theta", "theta_dot")
    control_names = ("torque",)
    angle_dims = (0,)

    def __init__(self, params: PendulumParams | None = None):
        self.params = params or PendulumParams()
        super().__init__(self.params.dt)
        self._inertia = self.params.mass * self.params.length**2

    def _step(self, state: np.ndarray, control: np.ndarray) -> np.ndarray:
        p = self.params
        theta, omega = state[..., 0], state[..., 1]
        acc = -(p.gravity / p.length) * np.sin(theta) - p.damping * omega / self._inertia + control[..., 0] / self._inertia
        omega_next = omega + self.dt * acc
        return np.stack([theta + self.dt * omega_next, omega_next], axis=-1)

    def _jacobians(self, state: np.ndarray, control: np.ndarray) -> Jacobians:
        p = self.params
        dt = self.dt
        batch = np.broadcast_shapes(state.shape[:-1], control.shape[:-1])
        a = np.zeros(batch + (2, 2))
        b = np.zeros(batch + (2, 1))
        a[..., 1, 0] = -dt * (p.gravity / p.length) * np.cos(state[..., 0])
        a[..., 1, 1] = 1.0 - dt * p.damping / self._inertia
        b[..., 1, 0] = dt / self._inertia
        a[..., 0, :] = dt * a[..., 1, :]
        a[..., 0, 0] += 1.0
        b[..., 0, 0] = dt * b[..., 1, 0]
        return Jacobians(d_next_d_state=a, d_next_d_control=b)
