from dataclasses import dataclass

import numpy as np

from soppi.cost.quadratic import running_cost_gradients
from soppi.domain.errors import ConfigurationError, DimensionError
from soppi.domain.models import ControllerConfig, CostSpec, SvgdConfig
from soppi.dynamics.base import DynamicsSystem
from soppi.engine.evaluator import evaluate_batch
from soppi.engine.selectors import compute_weights, update_nominal
from soppi.sampling.noise import SampleBatch, draw_noise, perturb
from soppi.svgd.stein import ParticleSet, apply_update, stein_direction


@dataclass(frozen=True)
class StepResult:
    u_star: np.ndarray
    applied: np.ndarray
    weights: np.ndarray
    costs: np.ndarray
    min_cost: float
    refined_batch: SampleBatch


def _check_nominal(system: DynamicsSystem, cfg: ControllerConfig, u_init) -> np.ndarray:
    u_init = np.asarray(u_init, dtype=float)
    expected = (cfg.horizon, system.control_dim)
    if u_init.shape != expected:
        raise DimensionError(f"U_init must be {expected}, got {u_init.shape}")
    return u_init


def sample_batch(system: DynamicsSystem, cfg: ControllerConfig, u_init, seed: int) -> SampleBatch:
    noise = draw_noise(seed, cfg.num_samples, cfg.horizon, system.control_dim, cfg.sigma_vector(system.control_dim))
    return perturb(u_init, noise)


def _weigh(system: DynamicsSystem, cost_spec: CostSpec, cfg: ControllerConfig, x0, batch: SampleBatch) -> StepResult:
    costs = evaluate_batch(system, cost_spec, x0, batch)
    weights = compute_weights(costs, cfg.lambda_)
    u_star = update_nominal(batch.base, batch.noises, weights)
    return StepResult(
        u_star=u_star,
        applied=u_star[0].copy(),
        weights=weights,
        costs=costs,
        min_cost=float(np.min(costs)),
        refined_batch=batch,
    )


def mppi_step(
    system: DynamicsSystem,
    cost_spec: CostSpec,
    cfg: ControllerConfig,
    x0,
    u_init,
    seed: int | None = None,
) -> StepResult:
    u_init = _check_nominal(system, cfg, u_init)
    batch = sample_batch(system, cfg, u_init, cfg.seed if seed is None else seed)
    return _weigh(system, cost_spec, cfg, x0, batch)


def single_step_cost_gradients(
    system: DynamicsSystem, cost_spec: CostSpec, states: np.ndarray, controls: np.ndarray, t: int
) -> np.ndarray:
    """Gradient of L(F(x_t, v_t), v_t) with respect to v_t for every sample."""
    next_states, jac = system.linearize(states, controls)
    d_state, d_control = running_cost_gradients(cost_spec, next_states, controls, t)
    return np.einsum("kn,knm->km", d_state, jac.d_next_d_control) + d_control


def refine_batch(
    system: DynamicsSystem, cost_spec: CostSpec, svgd: SvgdConfig, x0, batch: SampleBatch
) -> SampleBatch:
    """Run M Stein updates on the K controls of each timestep, front to back.

    Timestep t is refined from the states reached with the already-refined controls of
    steps < t; only the single-step running cost drives the attraction term.
    """
    if svgd.iterations == 0:
        return batch

    controls = np.array(batch.controls)
    states = np.broadcast_to(np.asarray(x0, dtype=float), (batch.num_samples, system.state_dim)).copy()
    for t in range(batch.horizon):
        particles = controls[:, t, :]
        for _ in range(svgd.iterations):
            grads = single_step_cost_gradients(system, cost_spec, states, particles, t)
            particle_set = ParticleSet(particles=particles, grads=grads)
            direction = stein_direction(particle_set, svgd)
            particles = apply_update(particle_set, direction, svgd.step_size).particles
        controls[:, t, :] = particles
        states = system.step(states, particles)
    return batch.refine(controls)


def require_jacobians(system: DynamicsSystem, cfg: ControllerConfig) -> None:
    if cfg.svgd.iterations > 0 and not system.differentiable:
        raise ConfigurationError(f"SOPPI needs control Jacobians, which {system.name} does not provide")


def soppi_step(
    system: DynamicsSystem,
    cost_spec: CostSpec,
    cfg: ControllerConfig,
    x0,
    u_init,
    seed: int | None = None,
) -> StepResult:
    require_jacobians(system, cfg)
    u_init = _check_nominal(system, cfg, u_init)
    batch = sample_batch(system, cfg, u_init, cfg.seed if seed is None else seed)
    refined = refine_batch(system, cost_spec, cfg.svgd, x0, batch)
    return _weigh(system, cost_spec, cfg, x0, refined)
