import logging

import numpy as np
from scipy.spatial.distance import pdist, squareform

from soppi.domain.errors import DimensionError

logger = logging.getLogger(__name__)


def _pair(v_a, v_b, sigma_k: float) -> tuple[np.ndarray, np.ndarray]:
    v_a = np.atleast_1d(np.asarray(v_a, dtype=float))
    v_b = np.atleast_1d(np.asarray(v_b, dtype=float))
    if v_a.shape != v_b.shape:
        raise DimensionError(f"kernel arguments differ in shape: {v_a.shape} vs {v_b.shape}")
    if sigma_k <= 0:
        raise ValueError(f"kernel bandwidth must be > 0, got {sigma_k}")
    return v_a, v_b


def kernel(v_a, v_b, sigma_k: float, use_squared_norm: bool = True) -> float:
    """RBF kernel exp(-d / (2 sigma^2)); d is the squared distance, or the plain distance when
    use_squared_norm is False."""
    v_a, v_b = _pair(v_a, v_b, sigma_k)
    distance = float(np.sum((v_a - v_b) ** 2))
    if not use_squared_norm:
        distance = np.sqrt(distance)
    return float(np.exp(-distance / (2.0 * sigma_k**2)))


def kernel_grad_wrt_first(v_a, v_b, sigma_k: float, use_squared_norm: bool = True) -> np.ndarray:
    v_a, v_b = _pair(v_a, v_b, sigma_k)
    value = kernel(v_a, v_b, sigma_k, use_squared_norm)
    diff = v_a - v_b
    if use_squared_norm:
        return -diff / sigma_k**2 * value
    norm = np.sqrt(np.sum(diff**2))
    if norm == 0.0:
        logger.warning("unsquared kernel is not differentiable at coincident points; using zero gradient")
        return np.zeros_like(diff)
    return -value / (2.0 * sigma_k**2) * diff / norm


def squared_distances(particles: np.ndarray) -> np.ndarray:
    """Condensed squared pairwise distances, pair order as scipy's pdist."""
    return pdist(particles, "sqeuclidean")


def pairwise_kernel(
    particles: np.ndarray,
    sigma_k: float,
    use_squared_norm: bool = True,
    sq_dist: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Kernel matrix k[j, i] = k(v_j, v_i) and weights c[j, i] such that
    d k(v_j, v_i) / d v_j = -c[j, i] * (v_j - v_i).

    Both matrices are symmetric. The (K, K, m) gradient tensor is never formed.
    """
    if sq_dist is None:
        sq_dist = squared_distances(particles)
    scale = 2.0 * sigma_k**2
    if use_squared_norm:
        values = squareform(np.exp(-sq_dist / scale))
        np.fill_diagonal(values, 1.0)
        return values, values / sigma_k**2

    dist = np.sqrt(sq_dist)
    condensed = np.exp(-dist / scale)
    coincident = int(np.count_nonzero(dist == 0.0))
    if coincident:
        logger.warning("unsquared kernel: %d coincident particle pair(s) get zero repulsion", coincident)
    weights = np.where(dist > 0.0, condensed / (scale * np.where(dist > 0.0, dist, 1.0)), 0.0)
    values = squareform(condensed)
    np.fill_diagonal(values, 1.0)
    return values, squareform(weights)


def kernel_repulsion(particles: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """sum_j d k(v_j, v_i) / d v_j for every i, i.e. v_i * sum_j c[j, i] - sum_j c[j, i] v_j."""
    # einsum without optimize stays off BLAS, so the j-sum order is fixed
    return particles * weights.sum(axis=0)[:, None] - np.einsum("ji,jk->ik", weights, particles)


def median_bandwidth(particles: np.ndarray, fallback: float = 1.0, sq_dist: np.ndarray | None = None) -> float:
    """sigma with sigma^2 = median squared pairwise distance / log K."""
    count = particles.shape[0]
    if count < 2:
        return fallback
    if sq_dist is None:
        sq_dist = squared_distances(particles)
    median = float(np.median(sq_dist))
    if median <= 0.0:
        return fallback
    return float(np.sqrt(median / np.log(count)))
