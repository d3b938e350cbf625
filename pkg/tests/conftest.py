import math

import numpy as np
import pytest

from qsc.state import make_state

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def fock(n: int):
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    return make_state(coeffs)


@pytest.fixture(scope="session")
def fock_state():
    return fock
