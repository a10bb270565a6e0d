import numpy as np
import pytest

from faberwalsh.maps import koch_liesen_preimage_pair, sym_intervals_pair


@pytest.fixture(scope="session")
def sym_pair():
    return sym_intervals_pair(0.25, 1.0)


@pytest.fixture(scope="session")
def kl_pair():
    return koch_liesen_preimage_pair(-1, 2 * np.pi / 3, 1.1, 5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
