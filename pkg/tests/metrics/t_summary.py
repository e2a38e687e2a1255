import math

import numpy as np
import pytest

from helpers import record_from_signal
from soppi.domain.models import MseCriterion, SettlingCriterion
from soppi.metrics import compare, metric_values, summarize, summarize_groups

MSE = MseCriterion(name="mse_x", signal_index=0)
SETTLING = SettlingCriterion(name="ts_x", signal_index=0, band=0.5)


def step_record(switch_index: int, length: int = 100):
    """Signal at 1.0 until `switch_index`, at 0.0 afterwards; settles at switch_index * dt if early enough."""
    signal = np.ones(length)
    signal[switch_index:] = 0.0
    return record_from_signal(signal)


def constant_record(value: float):
    return record_from_signal(np.full(20, value))


def t_single_trial_has_zero_std() -> None:
    (row,) = summarize([constant_record(2.0)], [MSE], algo="mppi")
    assert (row.algo, row.metric, row.n, row.n_nonconverged) == ("mppi", "mse_x", 1, 0)
    assert row.mean == pytest.approx(4.0)
    assert row.std == 0.0
    assert row.median == pytest.approx(4.0)


def t_identical_trials_have_zero_spread() -> None:
    (row,) = summarize([constant_record(1.5)] * 2, [MSE])
    assert row.std == 0.0
    assert row.n == 2


def t_five_trials_hand_values() -> None:
    trials = [constant_record(math.sqrt(v)) for v in (1.0, 2.0, 3.0, 4.0, 10.0)]
    (row,) = summarize(trials, [MSE])
    assert row.mean == pytest.approx(4.0)
    assert row.std == pytest.approx(math.sqrt(12.5))
    assert row.median == pytest.approx(3.0)


def t_non_converged_trials_are_counted_not_averaged() -> None:
    trials = [step_record(10), step_record(20), step_record(30), step_record(95)]
    assert metric_values(trials, SETTLING) == [pytest.approx(0.2), pytest.approx(0.4), pytest.approx(0.6), None]
    (row,) = summarize(trials, [SETTLING])
    assert row.n == 3
    assert row.n_nonconverged == 1
    assert row.mean == pytest.approx(0.4)
    assert row.std == pytest.approx(0.2)


def t_all_non_converged_gives_empty_stats() -> None:
    (row,) = summarize([step_record(99)] * 3, [SETTLING])
    assert (row.mean, row.std, row.median, row.n, row.n_nonconverged) == (None, None, None, 0, 3)


def t_summarize_needs_trials() -> None:
    with pytest.raises(ValueError):
        summarize([], [MSE])


def t_compare_reports_missing_p_on_degenerate_input() -> None:
    row = compare("mse_x", "soppi", [1.0, 1.0], "mppi", [2.0, 3.0])
    assert row.p_value is None and row.t is None
    row = compare("ts_x", "soppi", [1.0, None, 2.0], "mppi", [2.0, 3.0, None])
    assert row.p_value is not None and row.p_value < 0.5


def t_groups_get_rows_and_pairwise_p_values() -> None:
    groups = {
        "soppi": [constant_record(v) for v in (0.5, 0.6, 0.7)],
        "mppi": [constant_record(v) for v in (1.0, 1.2, 1.1)],
    }
    summary = summarize_groups(groups, [MSE, SETTLING])
    assert {(row.algo, row.metric) for row in summary.rows} == {
        (algo, metric) for algo in groups for metric in ("mse_x", "ts_x")
    }
    mse_rows = {(row.algo_a, row.algo_b): row for row in summary.p_values if row.metric == "mse_x"}
    assert set(mse_rows) == {("soppi", "mppi"), ("mppi", "soppi")}
    assert mse_rows["soppi", "mppi"].p_value < 0.05
    assert mse_rows["soppi", "mppi"].p_value + mse_rows["mppi", "soppi"].p_value == pytest.approx(1.0)
    assert summary.row("mppi", "ts_x").n_nonconverged == 3
    with pytest.raises(KeyError):
        summary.row("cem", "mse_x")
    assert summary.comparison("mse_x", "soppi", "mppi") is mse_rows["soppi", "mppi"]
    with pytest.raises(KeyError):
        summary.comparison("mse_x", "soppi", "cem")
