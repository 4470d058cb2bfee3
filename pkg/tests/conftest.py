import numpy as np
import pytest

EXAMPLE_DATA = np.array([2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0])


@pytest.fixture
def example_data():
    return EXAMPLE_DATA.copy()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
