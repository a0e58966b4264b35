import numpy as np
import pytest

from qsuperres import OpticalSystem


@pytest.fixture
def system():
    return OpticalSystem(k_max=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260818)
