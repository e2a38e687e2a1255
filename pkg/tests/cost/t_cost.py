import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from helpers import central_difference
from soppi.cost import cost_to_go, running_cost, running_cost_gradients, terminal_cost, wrap_angle
from soppi.domain.errors import DimensionError
from soppi.domain.models import CostSpec


def identity_spec(n: int = 4, m: int = 2, **overrides) -> CostSpec:
    values = dict(q=[1.0] * n, r=[1.0] * m, q_terminal=[1.0] * n, x_target=[0.0] * n)
    values.update(overrides)
    return CostSpec(**values)


def t_running_cost_is_zero_at_target(cartpole_cost) -> None:
    assert running_cost(cartpole_cost, cartpole_cost.target, [0.0]) == 0.0


def t_running_cost_identity_weights() -> None:
    assert running_cost(identity_spec(), [1.0, 0.0, 0.0, 0.0], [2.0, 0.0]) == pytest.approx(5.0)


def t_running_cost_matches_weighted_sum() -> None:
    rng = np.random.default_rng(11)
    q, r = rng.uniform(0.0, 3.0, size=4), rng.uniform(0.0, 1.0, size=1)
    target = rng.normal(size=4)
    spec = CostSpec(q=q.tolist(), r=r.tolist(), q_terminal=q.tolist(), x_target=target.tolist())
    state, control = rng.normal(size=4), rng.normal(size=1)
    expected = np.sum(q * (state - target) ** 2) + np.sum(r * control**2)
    assert running_cost(spec, state, control) == pytest.approx(expected, rel=1e-12)


def t_terminal_cost_cases() -> None:
    spec = CostSpec(q=[1.0, 1.0], r=[1.0], q_terminal=[3.0, 0.5], x_target=[1.0, -1.0])
    assert terminal_cost(spec, [1.0, -1.0]) == 0.0
    assert terminal_cost(spec, [2.0, 1.0]) == pytest.approx(3.0 * 1.0 + 0.5 * 4.0)
    zero = CostSpec(q=[1.0, 1.0], r=[1.0], q_terminal=[0.0, 0.0], x_target=[0.0, 0.0])
    assert terminal_cost(zero, [5.0, -7.0]) == 0.0


def t_cost_to_go_zero_weights() -> None:
    spec = CostSpec(q=[0.0, 0.0], r=[0.0], q_terminal=[0.0, 0.0], x_target=[0.0, 0.0])
    assert cost_to_go(spec, [[1.0, 2.0], [3.0, 4.0]], [[5.0]]) == 0.0


def t_cost_to_go_hand_case() -> None:
    spec = identity_spec(n=2, m=1)
    states = [[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]]
    controls = [[1.0], [3.0]]
    # (1 + 1) + (4 + 9) + terminal 2
    assert cost_to_go(spec, states, controls) == pytest.approx(17.0)


def t_cost_to_go_is_sum_of_running_and_terminal(cartpole_cost) -> None:
    rng = np.random.default_rng(5)
    states = rng.normal(size=(7, 4))
    controls = rng.normal(size=(6, 1))
    expected = terminal_cost(cartpole_cost, states[-1]) + sum(
        running_cost(cartpole_cost, states[t], controls[t], t) for t in range(6)
    )
    assert cost_to_go(cartpole_cost, states, controls) == pytest.approx(expected, rel=1e-12)


def t_cost_to_go_batches_over_samples(cartpole_cost) -> None:
    rng = np.random.default_rng(6)
    states = rng.normal(size=(3, 5, 4))
    controls = rng.normal(size=(3, 4, 1))
    batched = cost_to_go(cartpole_cost, states, controls)
    assert batched.shape == (3,)
    for k in range(3):
        assert batched[k] == pytest.approx(cost_to_go(cartpole_cost, states[k], controls[k]), rel=1e-12)


def t_cost_to_go_rejects_mismatched_lengths(cartpole_cost) -> None:
    with pytest.raises(DimensionError):
        cost_to_go(cartpole_cost, np.zeros((3, 4)), np.zeros((3, 1)))


def t_reference_controls_shift_control_error() -> None:
    spec = identity_spec(n=1, m=1, u_ref=[[1.0], [2.0]])
    assert running_cost(spec, [0.0], [2.0], t=1) == 0.0
    assert running_cost(spec, [0.0], [2.0], t=0) == pytest.approx(1.0)
    with pytest.raises(DimensionError):
        running_cost(spec, [0.0], [2.0], t=2)


def t_gradients_vanish_at_minimum() -> None:
    spec = identity_spec(n=2, m=1, x_target=[1.0, 2.0], u_ref=[[0.5]])
    d_state, d_control = running_cost_gradients(spec, [1.0, 2.0], [0.5])
    np.testing.assert_array_equal(d_state, np.zeros(2))
    np.testing.assert_array_equal(d_control, np.zeros(1))


def t_gradient_identity_weights_is_twice_error() -> None:
    d_state, _ = running_cost_gradients(identity_spec(), [1.0, -2.0, 0.5, 3.0], [0.0, 0.0])
    np.testing.assert_allclose(d_state, [2.0, -4.0, 1.0, 6.0])


@given(
    st.tuples(st.floats(-2.0, 2.0), st.floats(-3.0, 3.0), st.floats(-3.0, 3.0), st.floats(-5.0, 5.0)).map(np.array),
    st.floats(-20.0, 20.0).map(lambda u: np.array([u])),
)
def t_gradients_match_finite_differences(state, control) -> None:
    spec = CostSpec(
        q=[[1.25, 0.1, 0.0, 0.0], [0.1, 1.0, 0.0, 0.0], [0.0, 0.0, 12.0, 0.0], [0.0, 0.0, 0.0, 0.25]],
        r=[1e-3],
        q_terminal=[1.0, 1.0, 1.0, 1.0],
        x_target=[0.0, 0.0, 0.0, 0.0],
        angle_dims=[2],
    )
    d_state, d_control = running_cost_gradients(spec, state, control)
    fd_state = central_difference(lambda s: running_cost(spec, s, control), state)[0]
    fd_control = central_difference(lambda u: running_cost(spec, state, u), control)[0]
    np.testing.assert_allclose(d_state, fd_state, rtol=1e-6, atol=1e-6)
    np.testing.assert_allclose(d_control, fd_control, rtol=1e-6, atol=1e-6)


def t_angle_error_is_invariant_to_full_turns(cartpole_cost) -> None:
    state = np.array([0.3, -0.2, 2.5, 1.0])
    for turns in (-2, -1, 1, 3):
        shifted = state + np.array([0.0, 0.0, 2.0 * math.pi * turns, 0.0])
        assert running_cost(cartpole_cost, shifted, [1.0]) == pytest.approx(running_cost(cartpole_cost, state, [1.0]), rel=1e-9)


def t_wrap_angle_range() -> None:
    wrapped = wrap_angle(np.linspace(-20.0, 20.0, 401))
    assert np.all(wrapped > -math.pi) and np.all(wrapped <= math.pi)
    assert wrap_angle(math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)


def t_costs_are_non_negative(cartpole_cost) -> None:
    rng = np.random.default_rng(9)
    assert np.all(running_cost(cartpole_cost, rng.normal(scale=5.0, size=(100, 4)), rng.normal(size=(100, 1))) >= 0.0)


@pytest.mark.parametrize(
    "overrides",
    [
        dict(q=[[1.0, 0.0], [0.0, -1.0]]),
        dict(q=[[1.0, 2.0], [0.0, 1.0]]),
        dict(q_terminal=[1.0, 1.0, 1.0]),
        dict(angle_dims=[2]),
    ],
)
def t_invalid_cost_specs_are_rejected(overrides) -> None:
    values = dict(q=[1.0, 1.0], r=[1.0], q_terminal=[1.0, 1.0], x_target=[0.0, 0.0])
    values.update(overrides)
    with pytest.raises(ValidationError):
        CostSpec(**values)


def t_diagonal_shorthand_expands() -> None:
    spec = CostSpec(q=[2.0, 3.0], r=[0.5], q_terminal=[[1.0, 0.0], [0.0, 1.0]], x_target=[0.0, 0.0])
    np.testing.assert_array_equal(spec.q_matrix, np.diag([2.0, 3.0]))
    np.testing.assert_array_equal(spec.r_matrix, [[0.5]])


def t_wrong_state_dimension_is_rejected(cartpole_cost) -> None:
    with pytest.raises(DimensionError):
        running_cost(cartpole_cost, [0.0, 0.0], [0.0])
