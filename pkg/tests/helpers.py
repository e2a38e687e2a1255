import numpy as np

from soppi.domain.models import ControllerConfig, SvgdConfig
from soppi.domain.records import TrialRecord


def central_difference(fn, point: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Jacobian of fn at point by central differences; columns follow the entries of point."""
    point = np.asarray(point, dtype=float)
    base = np.atleast_1d(fn(point))
    jac = np.empty(base.shape + point.shape)
    for index in range(point.size):
        offset = np.zeros_like(point)
        offset[index] = h
        jac[..., index] = (np.atleast_1d(fn(point + offset)) - np.atleast_1d(fn(point - offset))) / (2.0 * h)
    return jac


def small_config(**overrides) -> ControllerConfig:
    values = dict(
        num_samples=32,
        horizon=10,
        lambda_=1.0,
        sigma=2.0,
        seed=7,
        svgd=SvgdConfig(step_size=0.05, iterations=2, bandwidth=1.0),
    )
    values.update(overrides)
    return ControllerConfig(**values)


def record_from_signal(signal, dt: float = 0.02) -> TrialRecord:
    """Single-state record carrying `signal` as its only state column."""
    signal = np.asarray(signal, dtype=float)
    steps = signal.size - 1
    return TrialRecord(
        times=dt * np.arange(signal.size),
        states=signal[:, None],
        controls=np.zeros((steps, 1)),
        step_wall_times=np.zeros(steps),
    )


def smoke_config_data(**experiment) -> dict:
    """Tiny double-integrator experiment: a handful of steps per trial."""
    data = {
        "system": {"id": "double_integrator", "params": {"dt": 0.02}},
        "cost": {"q": [10.0, 1.0], "r": [0.01], "q_terminal": [100.0, 10.0], "x_target": [0.0, 0.0]},
        "controller": {"num_samples": 16, "horizon": 5, "lambda": 1.0, "sigma": 2.0},
        "svgd": {"step_size": 0.05, "iterations": 2, "bandwidth": 1.0},
        "experiment": {
            "algos": [
                "mppi",
                {"label": "soppi_m0", "algo": "soppi", "svgd_iterations": 0},
                "soppi",
            ],
            "n_trials": 2,
            "duration": 0.1,
            "x0": [1.0, 0.0],
        },
    }
    data["experiment"].update(experiment)
    return data
