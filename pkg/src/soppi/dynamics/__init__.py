from .base import DynamicsSystem, Jacobians
from .cartpole import CartPole
from .linear import LinearSystem, double_integrator
from .pendulum import Pendulum
from .registry import build_system
from .rollout import jacobians, rollout, step

__all__ = [
    "CartPole",
    "DynamicsSystem",
    "Jacobians",
    "LinearSystem",
    "Pendulum",
    "build_system",
    "double_integrator",
    "jacobians",
    "rollout",
    "step",
]
