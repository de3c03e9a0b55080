import math

import numpy as np
import pytest

from triplebraid.braiding import fig2_initial_state
from triplebraid.model import base_frame


@pytest.fixture
def frame():
    return base_frame()


@pytest.fixture
def psi0():
    return fig2_initial_state()


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


GRID = np.linspace(math.pi / 6, 5 * math.pi / 6, 9)
