from .quadratic import (
    cost_to_go,
    default_cartpole_cost,
    running_cost,
    running_cost_gradients,
    terminal_cost,
    wrap_angle,
)

__all__ = [
    "cost_to_go",
    "default_cartpole_cost",
    "running_cost",
    "running_cost_gradients",
    "terminal_cost",
    "wrap_angle",
]
