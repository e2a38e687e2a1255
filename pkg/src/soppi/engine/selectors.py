import numpy as np

from soppi.domain.errors import DimensionError, NoViableSamplesError


def compute_weights(costs, lambda_: float) -> np.ndarray:
    """w_k = exp(-(S_k - beta) / lambda) / sum_j exp(-(S_j - beta) / lambda), beta = min_k S_k.

    Non-finite costs get zero weight.
    """
    if lambda_ <= 0:
        raise ValueError(f"lambda must be > 0, got {lambda_}")
    costs = np.asarray(costs, dtype=float)
    viable = np.isfinite(costs)
    if not np.any(viable):
        raise NoViableSamplesError("no viable samples: every cost is infinite")

    beta = costs[viable].min()
    scaled = np.zeros_like(costs)
    scaled[viable] = np.exp(-(costs[viable] - beta) / lambda_)
    return scaled / np.sum(scaled)


def update_nominal(base, noises, weights) -> np.ndarray:
    """u* = base + sum_k w_k * eps_k."""
    base = np.asarray(base, dtype=float)
    noises = np.asarray(noises, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if noises.shape[1:] != base.shape or weights.shape != noises.shape[:1]:
        raise DimensionError(
            f"shape mismatch: base {base.shape}, noises {noises.shape}, weights {weights.shape}"
        )
    return base + np.sum(weights[:, None, None] * noises, axis=0)
