import numpy as np
import pytest

import zecap as z


@pytest.fixture(scope="session")
def c5():
    return z.cycle(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
