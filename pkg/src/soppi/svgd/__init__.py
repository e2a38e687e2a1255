from .kernels import (
    kernel,
    kernel_grad_wrt_first,
    kernel_repulsion,
    median_bandwidth,
    pairwise_kernel,
    squared_distances,
)
from .stein import ParticleSet, apply_update, resolve_bandwidth, stein_direction

__all__ = [
    "ParticleSet",
    "apply_update",
    "kernel",
    "kernel_grad_wrt_first",
    "kernel_repulsion",
    "median_bandwidth",
    "pairwise_kernel",
    "resolve_bandwidth",
    "squared_distances",
    "stein_direction",
]
