from .response import mse, mse_for, settling_time
from .stats import WelchResult, student_t_cdf, welch_t_test_one_tailed
from .summary import compare, metric_values, summarize, summarize_groups

__all__ = [
    "WelchResult",
    "compare",
    "metric_values",
    "mse",
    "mse_for",
    "settling_time",
    "student_t_cdf",
    "summarize",
    "summarize_groups",
    "welch_t_test_one_tailed",
]
