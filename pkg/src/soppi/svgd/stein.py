from dataclasses import dataclass

import numpy as np

from soppi.domain.errors import DimensionError, NonFiniteError
from soppi.domain.models import SvgdConfig
from soppi.svgd.kernels import kernel_repulsion, median_bandwidth, pairwise_kernel, squared_distances


@dataclass(frozen=True)
class ParticleSet:
    """Controls of all K samples at one timestep and the cost gradients at those positions."""

    particles: np.ndarray
    grads: np.ndarray

    def __post_init__(self) -> None:
        if self.particles.ndim != 2 or self.particles.shape != self.grads.shape:
            raise DimensionError(
                f"particles and grads must both be (K, m), got {self.particles.shape} and {self.grads.shape}"
            )


def resolve_bandwidth(particles: np.ndarray, cfg: SvgdConfig, sq_dist: np.ndarray | None = None) -> float:
    if cfg.bandwidth == "median":
        return median_bandwidth(particles, sq_dist=sq_dist)
    return float(cfg.bandwidth)


def _clip_rows(grads: np.ndarray, limit: float) -> np.ndarray:
    norms = np.sqrt(np.sum(grads**2, axis=-1, keepdims=True))
    return grads * np.minimum(1.0, limit / np.where(norms > 0.0, norms, 1.0))


def stein_direction(particle_set: ParticleSet, cfg: SvgdConfig, sigma_k: float | None = None) -> np.ndarray:
    """phi(v_i) = 1/K sum_j [ k(v_j, v_i) * (-alpha * grad_j) + d k(v_j, v_i) / d v_j ].

    Both sums over j are kernel-matrix products evaluated with einsum, whose reduction
    order is fixed, so the result does not depend on thread count.
    """
    grads = particle_set.grads
    finite = np.all(np.isfinite(grads), axis=-1)
    if not np.all(finite):
        index = int(np.flatnonzero(~finite)[0])
        raise NonFiniteError(f"non-finite cost gradient for sample {index}", index=index)
    if cfg.grad_clip is not None:
        grads = _clip_rows(grads, cfg.grad_clip)

    particles = particle_set.particles
    sq_dist = squared_distances(particles)
    if sigma_k is None:
        sigma_k = resolve_bandwidth(particles, cfg, sq_dist)
    values, weights = pairwise_kernel(particles, sigma_k, cfg.use_squared_norm, sq_dist)
    attraction = np.einsum("ji,jk->ik", values, -cfg.alpha * grads)
    return (attraction + kernel_repulsion(particles, weights)) / particles.shape[0]


def apply_update(particle_set: ParticleSet, direction: np.ndarray, step_size: float) -> ParticleSet:
    """Move particles along `direction`; the carried gradients belong to the old positions."""
    direction = np.asarray(direction, dtype=float)
    if direction.shape != particle_set.particles.shape:
        raise DimensionError(f"direction shape {direction.shape} != particles {particle_set.particles.shape}")
    return ParticleSet(particles=particle_set.particles + step_size * direction, grads=particle_set.grads)
