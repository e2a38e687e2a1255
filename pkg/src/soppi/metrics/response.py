import numpy as np

from soppi.cost.quadratic import wrap_angle
from soppi.domain.models import MseCriterion, SettlingCriterion
from soppi.domain.records import TrialRecord

# A settled signal must stay in band over at least the final quarter of the record.
SETTLED_TAIL_FRACTION = 0.25


def _tracking_error(record: TrialRecord, signal_index: int, target: float, wrap: bool) -> np.ndarray:
    if record.num_steps == 0:
        raise ValueError("record is empty")
    error = record.signal(signal_index) - target
    return wrap_angle(error) if wrap else error


def mse(record: TrialRecord, signal_index: int, target: float = 0.0, wrap: bool = False) -> float:
    error = _tracking_error(record, signal_index, target, wrap)
    return float(np.mean(error**2))


def mse_for(record: TrialRecord, criterion: MseCriterion) -> float:
    return mse(record, criterion.signal_index, criterion.target, criterion.wrap_angle)


def settling_time(record: TrialRecord, criterion: SettlingCriterion) -> float | None:
    """Earliest recorded time after which the signal never leaves the band; None if it never settles."""
    error = _tracking_error(record, criterion.signal_index, criterion.target, criterion.wrap_angle)
    inside = np.abs(error) <= criterion.half_width
    outside = np.flatnonzero(~inside)
    first = 0 if outside.size == 0 else int(outside[-1]) + 1
    tail_start = int(np.floor((1.0 - SETTLED_TAIL_FRACTION) * inside.size))
    if first > tail_start:
        return None
    return float(record.times[first])
