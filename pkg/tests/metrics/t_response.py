import math

import numpy as np
import pytest

from helpers import record_from_signal
from soppi.domain.models import MseCriterion, SettlingCriterion
from soppi.metrics import mse, mse_for, settling_time

DT = 0.02


def band(width: float, **overrides) -> SettlingCriterion:
    return SettlingCriterion(name="ts", signal_index=0, band=width, **overrides)


def t_mse_of_signal_at_target_is_zero() -> None:
    assert mse(record_from_signal(np.full(50, 0.3)), 0, target=0.3) == 0.0


def t_mse_of_constant_offset() -> None:
    assert mse(record_from_signal(np.full(50, 1.5)), 0) == pytest.approx(2.25, rel=1e-12)


def t_mse_of_ramp() -> None:
    steps = 400
    record = record_from_signal(DT * np.arange(steps + 1))
    expected = DT**2 * steps * (2 * steps + 1) / 6.0
    assert mse(record, 0) == pytest.approx(expected, rel=1e-12)


def t_wrapped_mse_ignores_full_turns() -> None:
    signal = np.random.default_rng(2).uniform(-3.0, 3.0, size=60)
    criterion = MseCriterion(name="mse_theta", signal_index=0, wrap_angle=True)
    base = mse_for(record_from_signal(signal), criterion)
    for turns in (-1, 2):
        assert mse_for(record_from_signal(signal + 2.0 * math.pi * turns), criterion) == pytest.approx(base, rel=1e-9)


def t_wrapped_mse_of_hanging_pole() -> None:
    criterion = MseCriterion(name="mse_theta", signal_index=0, wrap_angle=True)
    assert mse_for(record_from_signal(np.full(10, -math.pi)), criterion) == pytest.approx(math.pi**2)


def t_empty_record_is_rejected() -> None:
    with pytest.raises(ValueError):
        mse(record_from_signal([0.0]), 0)
    with pytest.raises(ValueError):
        settling_time(record_from_signal([0.0]), band(1.0))


def t_always_in_band_settles_at_start() -> None:
    assert settling_time(record_from_signal(np.full(100, 0.05)), band(0.1)) == 0.0


def t_never_in_band_does_not_settle() -> None:
    assert settling_time(record_from_signal(np.full(100, 2.0)), band(0.1)) is None


def t_late_entry_into_band_does_not_count() -> None:
    signal = np.ones(100)
    signal[90:] = 0.0
    assert settling_time(record_from_signal(signal), band(0.1)) is None
    signal[70:] = 0.0
    assert settling_time(record_from_signal(signal), band(0.1)) == pytest.approx(70 * DT)


def t_exponential_decay_settles_on_next_sample() -> None:
    amplitude, tau, width = 2.0, 0.5, 0.1
    times = DT * np.arange(501)
    settled = settling_time(record_from_signal(amplitude * np.exp(-times / tau)), band(width))
    analytic = tau * math.log(amplitude / width)
    assert analytic <= settled < analytic + DT


def t_fraction_of_range_band() -> None:
    criterion = band(0.05, mode="fraction-of-range", wrap_angle=True)
    assert criterion.half_width == pytest.approx(0.05 * math.pi)
    signal = np.concatenate([np.full(20, 1.0), np.full(80, 2.0 * math.pi + 0.1)])
    assert settling_time(record_from_signal(signal), criterion) == pytest.approx(20 * DT)


def t_wider_band_never_settles_later() -> None:
    signal = np.exp(-DT * np.arange(600)) * np.cos(3.0 * DT * np.arange(600))
    record = record_from_signal(signal)
    previous = math.inf
    for width in (0.02, 0.05, 0.1, 0.3, 0.6, 1.5):
        settled = settling_time(record, band(width))
        assert settled is not None and settled <= previous
        previous = settled
