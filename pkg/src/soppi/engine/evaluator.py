import logging

import numpy as np

from soppi.cost.quadratic import cost_to_go
from soppi.domain.errors import DimensionError
from soppi.domain.models import CostSpec
from soppi.dynamics.base import DynamicsSystem
from soppi.dynamics.rollout import rollout
from soppi.sampling.noise import SampleBatch

logger = logging.getLogger(__name__)


def evaluate_batch(system: DynamicsSystem, cost_spec: CostSpec, x0, batch: SampleBatch) -> np.ndarray:
    """Cost-to-go of every sample's rollout from x0; diverged samples cost +inf."""
    reference = cost_spec.reference
    if reference is not None and reference.shape[0] < batch.horizon:
        raise DimensionError(f"reference has {reference.shape[0]} steps, batch horizon is {batch.horizon}")

    states = rollout(system, x0, batch.controls)
    with np.errstate(over="ignore", invalid="ignore"):
        costs = cost_to_go(cost_spec, states, batch.controls)

    diverged = ~np.isfinite(costs)
    if np.any(diverged):
        indices = np.flatnonzero(diverged)
        logger.warning(
            "%d of %d samples diverged and were discarded (first indices: %s)",
            indices.size,
            costs.size,
            indices[:10].tolist(),
        )
        costs = np.where(diverged, np.inf, costs)
    return costs
