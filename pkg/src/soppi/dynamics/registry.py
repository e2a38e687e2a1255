from soppi.domain.models import CartPoleParams, DoubleIntegratorParams, PendulumParams
from soppi.dynamics.base import DynamicsSystem
from soppi.dynamics.cartpole import CartPole
from soppi.dynamics.linear import double_integrator
from soppi.dynamics.pendulum import Pendulum

SYSTEM_IDS = ("cartpole", "double_integrator", "pendulum")


def build_system(system_id: str, params=None) -> DynamicsSystem:
    if system_id == "cartpole":
        return CartPole(params or CartPoleParams())
    if system_id == "double_integrator":
        return double_integrator((params or DoubleIntegratorParams()).dt)
    if system_id == "pendulum":
        return Pendulum(params or PendulumParams())
    raise ValueError(f"Unknown system id: {system_id!r} (expected one of {', '.join(SYSTEM_IDS)})")
