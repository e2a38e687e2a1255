"""Counter-based Gaussian perturbations.

Each sample k draws from its own Philox stream keyed by the seed with k in the top
counter word, so entry (k, t, j) depends only on the seed, k and its position t*m + j.
Gaussians come from the inverse normal CDF applied to 53-bit uniforms taken from the raw
64-bit output. This avoids numpy's Generator samplers, whose streams are not guaranteed
stable across releases.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from soppi.domain.errors import DimensionError

_UNIFORM_SCALE = 2.0**-53
SEED_LIMIT = 2**64


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class NoiseTensor:
    values: np.ndarray
    seed: int
    sigma: np.ndarray

    @property
    def num_samples(self) -> int:
        return self.values.shape[0]

    @property
    def horizon(self) -> int:
        return self.values.shape[1]

    @property
    def control_dim(self) -> int:
        return self.values.shape[2]


@dataclass(frozen=True)
class SampleBatch:
    controls: np.ndarray
    noises: np.ndarray
    base: np.ndarray
    seed: int

    @property
    def num_samples(self) -> int:
        return self.controls.shape[0]

    @property
    def horizon(self) -> int:
        return self.controls.shape[1]

    def refine(self, controls: np.ndarray) -> "SampleBatch":
        """New batch at refined control positions; the noise is re-derived against the same base."""
        controls = np.array(controls, dtype=float)
        if controls.shape != self.controls.shape:
            raise DimensionError(f"refined controls shape {controls.shape} != {self.controls.shape}")
        return SampleBatch(
            controls=_frozen(controls),
            noises=_frozen(controls - self.base),
            base=self.base,
            seed=self.seed,
        )


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def standard_normal_row(seed: int, sample: int, size: int) -> np.ndarray:
    bit_generator = np.random.Philox(key=seed, counter=[0, 0, 0, sample])
    raw = bit_generator.random_raw(size)
    uniforms = ((raw >> np.uint64(11)).astype(float) + 0.5) * _UNIFORM_SCALE
    return ndtri(uniforms)


def draw_noise(seed: int, num_samples: int, horizon: int, control_dim: int, sigma) -> NoiseTensor:
    seed = _check_seed(seed)
    if min(num_samples, horizon, control_dim) < 1:
        raise ValueError(
            f"num_samples, horizon and control_dim must be >= 1, got {num_samples}, {horizon}, {control_dim}"
        )
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    if sigma.size == 1:
        sigma = np.full(control_dim, float(sigma[0]))
    if sigma.shape != (control_dim,):
        raise DimensionError(f"sigma must have {control_dim} entries, got {sigma.shape}")
    if not np.all(np.isfinite(sigma)) or np.any(sigma <= 0):
        raise ValueError(f"sigma must be finite and > 0, got {sigma.tolist()}")

    size = horizon * control_dim
    values = np.empty((num_samples, horizon, control_dim))
    for sample in range(num_samples):
        values[sample] = standard_normal_row(seed, sample, size).reshape(horizon, control_dim)
    values *= sigma
    return NoiseTensor(values=_frozen(values), seed=seed, sigma=_frozen(sigma.copy()))


def perturb(base, noise: NoiseTensor) -> SampleBatch:
    base = np.array(base, dtype=float)
    if base.shape != noise.values.shape[1:]:
        raise DimensionError(f"base shape {base.shape} does not match noise {noise.values.shape[1:]}")
    return SampleBatch(
        controls=_frozen(base + noise.values),
        noises=noise.values,
        base=_frozen(base),
        seed=noise.seed,
    )


def derive_step_seed(seed: int, step_index: int) -> int:
    """Per-environment-step seed; identical across algorithms that share a trial seed."""
    state = np.random.SeedSequence([_check_seed(seed), int(step_index)]).generate_state(1, dtype=np.uint64)
    return int(state[0])
