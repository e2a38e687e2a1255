from collections.abc import Mapping, Sequence
from itertools import permutations

import numpy as np

from soppi.domain.errors import DegenerateVarianceError
from soppi.domain.models import MseCriterion, SettlingCriterion
from soppi.domain.records import TrialRecord
from soppi.metrics.response import mse_for, settling_time
from soppi.metrics.stats import welch_t_test_one_tailed
from soppi.schemas.summary import PValueRow, Summary, SummaryRow

Criterion = MseCriterion | SettlingCriterion


def metric_values(trials: Sequence[TrialRecord], criterion: Criterion) -> list[float | None]:
    if isinstance(criterion, MseCriterion):
        return [mse_for(record, criterion) for record in trials]
    return [settling_time(record, criterion) for record in trials]


def _describe(algo: str, metric: str, values: list[float | None]) -> SummaryRow:
    # Non-converged trials are counted, never averaged in.
    converged = np.asarray([v for v in values if v is not None], dtype=float)
    n = int(converged.size)
    if n == 0:
        return SummaryRow(algo=algo, metric=metric, mean=None, std=None, median=None, n=0, n_nonconverged=len(values))
    return SummaryRow(
        algo=algo,
        metric=metric,
        mean=float(np.mean(converged)),
        std=float(np.std(converged, ddof=1)) if n > 1 else 0.0,
        median=float(np.median(converged)),
        n=n,
        n_nonconverged=len(values) - n,
    )


def summarize(
    trials: Sequence[TrialRecord],
    criteria: Sequence[Criterion],
    algo: str = "",
) -> list[SummaryRow]:
    if not trials:
        raise ValueError("summarize needs at least one trial")
    return [_describe(algo, criterion.name, metric_values(trials, criterion)) for criterion in criteria]


def compare(metric: str, label_a: str, values_a, label_b: str, values_b) -> PValueRow:
    a = [v for v in values_a if v is not None]
    b = [v for v in values_b if v is not None]
    row = PValueRow(metric=metric, algo_a=label_a, algo_b=label_b)
    try:
        result = welch_t_test_one_tailed(a, b)
    except DegenerateVarianceError:
        return row
    row.t, row.dof, row.p_value = result.t, result.dof, result.p
    return row


def summarize_groups(groups: Mapping[str, Sequence[TrialRecord]], criteria: Sequence[Criterion]) -> Summary:
    """Per-label summary rows plus one-tailed Welch p-values for every ordered label pair."""
    values = {
        label: {criterion.name: metric_values(records, criterion) for criterion in criteria}
        for label, records in groups.items()
    }
    summary = Summary()
    for label, records in groups.items():
        summary.rows.extend(summarize(records, criteria, algo=label))
    for criterion in criteria:
        for label_a, label_b in permutations(groups, 2):
            summary.p_values.append(
                compare(criterion.name, label_a, values[label_a][criterion.name], label_b, values[label_b][criterion.name])
            )
    return summary
