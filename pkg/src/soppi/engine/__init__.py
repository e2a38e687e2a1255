from .controller import StepResult, mppi_step, refine_batch, soppi_step
from .episode import RecedingHorizonController, run_episode
from .evaluator import evaluate_batch
from .selectors import compute_weights, update_nominal

__all__ = [
    "RecedingHorizonController",
    "StepResult",
    "compute_weights",
    "evaluate_batch",
    "mppi_step",
    "refine_batch",
    "run_episode",
    "soppi_step",
    "update_nominal",
]
