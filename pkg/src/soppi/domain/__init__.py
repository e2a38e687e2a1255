from .errors import (
    ConfigurationError,
    DegenerateVarianceError,
    DimensionError,
    NonFiniteError,
    NoViableSamplesError,
)
from .models import (
    CartPoleParams,
    ControllerConfig,
    CostSpec,
    DoubleIntegratorParams,
    MseCriterion,
    PendulumParams,
    SettlingCriterion,
    SvgdConfig,
)
from .records import TrialRecord

__all__ = [
    "CartPoleParams",
    "ConfigurationError",
    "ControllerConfig",
    "CostSpec",
    "DegenerateVarianceError",
    "DimensionError",
    "DoubleIntegratorParams",
    "MseCriterion",
    "NoViableSamplesError",
    "NonFiniteError",
    "PendulumParams",
    "SettlingCriterion",
    "SvgdConfig",
    "TrialRecord",
]
