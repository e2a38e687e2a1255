import numpy as np

from soppi.domain.models import CartPoleParams
from soppi.dynamics.base import DynamicsSystem, Jacobians


class CartPole(DynamicsSystem):
    """Florian cart-pole, theta = 0 upright, integrated by semi-implicit Euler.

    Cart friction is Coulomb (sign of the normal force times cart velocity), pole friction
    is viscous. Both default to zero. Theta is never wrapped here.
    """

    name = "cartpole"
    state_names = ("x", "x_dot", "theta", "theta_dot")
    control_names = ("force",)
    angle_dims = (2,)

    def __init__(self, params: CartPoleParams | None = None):
        self.params = params or CartPoleParams()
        super().__init__(self.params.dt)
        self._total_mass = self.params.cart_mass + self.params.pole_mass
        self._pole_moment = self.params.pole_mass * self.params.pole_half_length

    def _force(self, control: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        force = control[..., 0]
        limit = self.params.force_limit
        if limit is None:
            return force, np.ones_like(force)
        return np.clip(force, -limit, limit), (np.abs(force) < limit).astype(float)

    def _pole_terms(self, theta, omega, force, sign):
        p = self.params
        total, ml = self._total_mass, self._pole_moment
        sin, cos = np.sin(theta), np.cos(theta)
        inner = (-force - ml * omega**2 * (sin + p.cart_friction * sign * cos)) / total
        inner = inner + p.cart_friction * p.gravity * sign
        num = p.gravity * sin + cos * inner - p.pole_friction * omega / ml
        den = p.pole_half_length * (4.0 / 3.0 - p.pole_mass * cos * (cos - p.cart_friction * sign) / total)
        theta_acc = num / den
        normal = total * p.gravity - ml * (theta_acc * sin + omega**2 * cos)
        return sin, cos, inner, num, den, theta_acc, normal

    def _solve(self, state: np.ndarray, force: np.ndarray):
        x_dot, theta, omega = state[..., 1], state[..., 2], state[..., 3]
        sign = np.sign(x_dot)
        terms = self._pole_terms(theta, omega, force, sign)
        if self.params.cart_friction > 0:
            # Coulomb term uses sgn(N_c * x_dot); redo with the flipped sign where N_c < 0.
            flipped = terms[-1] < 0
            if np.any(flipped):
                sign = np.where(flipped, -sign, sign)
                terms = self._pole_terms(theta, omega, force, sign)
        sin, cos, _, _, _, theta_acc, normal = terms
        x_acc = (
            force
            + self._pole_moment * (omega**2 * sin - theta_acc * cos)
            - self.params.cart_friction * normal * sign
        ) / self._total_mass
        return x_acc, theta_acc, sign, terms

    def _step(self, state: np.ndarray, control: np.ndarray) -> np.ndarray:
        force, _ = self._force(control)
        x_acc, theta_acc, _, _ = self._solve(state, force)
        return self._integrate(state, x_acc, theta_acc)

    def _integrate(self, state: np.ndarray, x_acc: np.ndarray, theta_acc: np.ndarray) -> np.ndarray:
        dt = self.dt
        x_dot_next = state[..., 1] + dt * x_acc
        omega_next = state[..., 3] + dt * theta_acc
        return np.stack(
            [state[..., 0] + dt * x_dot_next, x_dot_next, state[..., 2] + dt * omega_next, omega_next],
            axis=-1,
        )

    def _jacobians(self, state: np.ndarray, control: np.ndarray) -> Jacobians:
        return self._linearize(state, control)[1]

    def _linearize(self, state: np.ndarray, control: np.ndarray) -> tuple[np.ndarray, Jacobians]:
        # one _solve serves both the next state and the Jacobians
        p = self.params
        total, ml, mu_c = self._total_mass, self._pole_moment, p.cart_friction
        force, d_force = self._force(control)
        omega = state[..., 3]
        x_acc, theta_acc, sign, (sin, cos, inner, num, den, _, _) = self._solve(state, force)
        next_state = self._integrate(state, x_acc, theta_acc)

        d_inner_theta = -ml * omega**2 * (cos - mu_c * sign * sin) / total
        d_inner_omega = -2.0 * ml * omega * (sin + mu_c * sign * cos) / total
        d_inner_force = -1.0 / total

        d_num_theta = p.gravity * cos - sin * inner + cos * d_inner_theta
        d_num_omega = cos * d_inner_omega - p.pole_friction / ml
        d_num_force = cos * d_inner_force
        d_den_theta = p.pole_half_length * p.pole_mass * sin * (2.0 * cos - mu_c * sign) / total

        d_tacc_theta = (d_num_theta - theta_acc * d_den_theta) / den
        d_tacc_omega = d_num_omega / den
        d_tacc_force = d_num_force / den

        d_normal_theta = -ml * (d_tacc_theta * sin + theta_acc * cos - omega**2 * sin)
        d_normal_omega = -ml * (d_tacc_omega * sin + 2.0 * omega * cos)
        d_normal_force = -ml * d_tacc_force * sin

        d_xacc_theta = (ml * (omega**2 * cos - d_tacc_theta * cos + theta_acc * sin) - mu_c * sign * d_normal_theta) / total
        d_xacc_omega = (ml * (2.0 * omega * sin - d_tacc_omega * cos) - mu_c * sign * d_normal_omega) / total
        d_xacc_force = (1.0 - ml * d_tacc_force * cos - mu_c * sign * d_normal_force) / total

        dt = self.dt
        batch = state.shape[:-1]
        a = np.zeros(batch + (4, 4))
        b = np.zeros(batch + (4, 1))

        # velocity rows first (semi-implicit Euler), positions reuse them
        a[..., 1, 1] = 1.0
        a[..., 1, 2] = dt * d_xacc_theta
        a[..., 1, 3] = dt * d_xacc_omega
        a[..., 3, 2] = dt * d_tacc_theta
        a[..., 3, 3] = 1.0 + dt * d_tacc_omega
        a[..., 0, :] = dt * a[..., 1, :]
        a[..., 0, 0] += 1.0
        a[..., 2, :] = dt * a[..., 3, :]
        a[..., 2, 2] += 1.0

        b[..., 1, 0] = dt * d_xacc_force * d_force
        b[..., 3, 0] = dt * d_tacc_force * d_force
        b[..., 0, 0] = dt * b[..., 1, 0]
        b[..., 2, 0] = dt * b[..., 3, 0]
        return next_state, Jacobians(d_next_d_state=a, d_next_d_control=b)
