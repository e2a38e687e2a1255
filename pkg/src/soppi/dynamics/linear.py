import numpy as np

from soppi.dynamics.base import DynamicsSystem, Jacobians


class LinearSystem(DynamicsSystem):
    name = "linear"

    def __init__(self, a, b, dt: float, state_names=None, control_names=None):
        self.a = np.asarray(a, dtype=float)
        self.b = np.asarray(b, dtype=float)
        n, m = self.b.shape
        if self.a.shape != (n, n):
            raise ValueError(f"A must be {n}x{n} to match B {self.b.shape}")
        self.state_names = tuple(state_names or (f"state_{i}" for i in range(n)))
        self.control_names = tuple(control_names or (f"u_{j}" for j in range(m)))
        super().__init__(dt)

    def _step(self, state: np.ndarray, control: np.ndarray) -> np.ndarray:
        return np.einsum("ij,...j->...i", self.a, state) + np.einsum("ij,...j->...i", self.b, control)

    def _jacobians(self, state: np.ndarray, control: np.ndarray) -> Jacobians:
        batch = np.broadcast_shapes(state.shape[:-1], control.shape[:-1])
        return Jacobians(
            d_next_d_state=np.broadcast_to(self.a, batch + self.a.shape).copy(),
            d_next_d_control=np.broadcast_to(self.b, batch + self.b.shape).copy(),
        )


def double_integrator(dt: float = 0.02) -> LinearSystem:
    # semi-implicit Euler on p'' = u: v' = v + dt*u, p' = p + dt*v'
    system = LinearSystem(
        a=[[1.0, dt], [0.0, 1.0]],
        b=[[dt * dt], [dt]],
        dt=dt,
        state_names=("position", "velocity"),
        control_names=("acceleration",),
    )
    system.name = "double_integrator"
    return system
