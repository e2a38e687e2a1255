from .experiment import AlgoVariant, ExperimentConfig, default_metrics
from .manifest import RunManifest, TrialEntry
from .summary import PValueRow, Summary, SummaryRow

__all__ = [
    "AlgoVariant",
    "ExperimentConfig",
    "PValueRow",
    "RunManifest",
    "Summary",
    "SummaryRow",
    "TrialEntry",
    "default_metrics",
]
