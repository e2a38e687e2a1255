import numpy as np
import pytest

from helpers import smoke_config_data
from soppi.dynamics import CartPole
from soppi.domain.records import TrialRecord
from soppi.harness import emit_plot_data, read_plot_table, run_experiment
from soppi.repository import RunStore
from soppi.schemas.experiment import ExperimentConfig


def cartpole_record(seed: int, steps: int = 6) -> TrialRecord:
    rng = np.random.default_rng(seed)
    return TrialRecord(
        times=0.02 * np.arange(steps + 1),
        states=rng.normal(size=(steps + 1, 4)),
        controls=rng.normal(size=(steps, 1)),
        step_wall_times=np.zeros(steps),
    )


def t_one_table_per_signal_and_label(tmp_path) -> None:
    groups = {"mppi": [cartpole_record(0), cartpole_record(1)], "soppi": [cartpole_record(2)]}
    written = emit_plot_data(groups, CartPole(), tmp_path)
    assert sorted(p.relative_to(tmp_path).as_posix() for p in written) == sorted(
        f"{label}/{name}.csv" for label in groups for name in ("x", "x_dot", "theta", "theta_dot", "force")
    )

    header = (tmp_path / "mppi" / "theta.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "t,trial_0,trial_1"

    times, values = read_plot_table(tmp_path / "mppi" / "theta.csv")
    assert values.shape == (7, 2)
    np.testing.assert_array_equal(times, groups["mppi"][0].times)
    np.testing.assert_array_equal(values[:, 1], groups["mppi"][1].states[:, 2])

    times, values = read_plot_table(tmp_path / "soppi" / "force.csv")
    assert values.shape == (6, 1)
    np.testing.assert_array_equal(values[:, 0], groups["soppi"][0].controls[:, 0])


def t_records_of_different_length_are_rejected(tmp_path) -> None:
    with pytest.raises(ValueError):
        emit_plot_data({"mppi": [cartpole_record(0, 5), cartpole_record(1, 6)]}, CartPole(), tmp_path)


def t_plot_data_from_a_run_directory(tmp_path) -> None:
    config = ExperimentConfig.model_validate(smoke_config_data(algos=["mppi"]))
    run_experiment(config, tmp_path / "run", record_timing=False)
    store = RunStore(tmp_path / "run")
    written = emit_plot_data(store.load_groups(store.load_manifest()), config.build_system(), tmp_path / "plots")
    assert {p.name for p in written} == {"position.csv", "velocity.csv", "acceleration.csv"}
    _, values = read_plot_table(tmp_path / "plots" / "mppi" / "position.csv")
    assert values.shape == (6, 2)
