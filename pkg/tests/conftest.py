import numpy as np
import pytest

from qmacdonald import QParams


@pytest.fixture
def p():
    return QParams(q=0.5, k=0.4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
