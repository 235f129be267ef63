import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rectcover import PointSet

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def staircase():
    return PointSet.from_points([(0, 0), (1, 1), (2, 2), (3, 3)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
