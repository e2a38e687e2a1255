import math
import os

import hypothesis
import numpy as np
import pytest

from soppi.cost import default_cartpole_cost
from soppi.domain.models import CostSpec
from soppi.dynamics import CartPole, double_integrator

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_collection_modifyitems(config, items):
    if os.getenv("SOPPI_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set SOPPI_RUN_SLOW=1 to run benchmark checks")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def cartpole() -> CartPole:
    return CartPole()


@pytest.fixture
def integrator():
    return double_integrator(0.02)


@pytest.fixture
def cartpole_cost() -> CostSpec:
    return default_cartpole_cost()


@pytest.fixture
def integrator_cost() -> CostSpec:
    return CostSpec(q=[10.0, 1.0], r=[0.01], q_terminal=[100.0, 10.0], x_target=[0.0, 0.0])


@pytest.fixture
def hanging_state() -> np.ndarray:
    return np.array([0.0, 0.0, math.pi, 0.0])

