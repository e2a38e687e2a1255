from typing import NamedTuple

import numpy as np
from scipy.special import betainc

from soppi.domain.errors import DegenerateVarianceError


class WelchResult(NamedTuple):
    t: float
    dof: float
    p: float


def _group(name: str, values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise DegenerateVarianceError(f"group {name} needs at least 2 values, got {values.size}")
    if not np.all(np.isfinite(values)):
        raise DegenerateVarianceError(f"group {name} has non-finite values")
    return values


def student_t_cdf(t: float, dof: float) -> float:
    # P(T < t) through the regularized incomplete beta: P(|T| > |t|) = I_{dof/(dof+t^2)}(dof/2, 1/2).
    tail = 0.5 * float(betainc(0.5 * dof, 0.5, dof / (dof + t * t)))
    return tail if t < 0 else 1.0 - tail


def welch_t_test_one_tailed(group_a, group_b) -> WelchResult:
    """One-tailed Welch test of "mean(a) < mean(b)"; small p favours a (smaller is better)."""
    a = _group("a", group_a)
    b = _group("b", group_b)
    var_a = float(np.var(a, ddof=1))
    var_b = float(np.var(b, ddof=1))
    if var_a == 0.0 or var_b == 0.0:
        raise DegenerateVarianceError("Welch's t-test needs nonzero variance in both groups")

    se_a = var_a / a.size
    se_b = var_b / b.size
    t = (float(np.mean(a)) - float(np.mean(b))) / np.sqrt(se_a + se_b)
    dof = (se_a + se_b) ** 2 / (se_a**2 / (a.size - 1) + se_b**2 / (b.size - 1))
    return WelchResult(t=float(t), dof=float(dof), p=student_t_cdf(float(t), float(dof)))
