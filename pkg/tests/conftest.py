import numpy as np
import pytest

from elliptic_perturbation import make_grid


@pytest.fixture(scope="session")
def small_grid():
    return make_grid(16, 24)


@pytest.fixture(scope="session")
def default_grid():
    return make_grid(32, 48)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_poly(rng, degree, scale=1.0):
    """Random polynomial in z, zbar as a callable plus its coefficient table."""
    terms = {}
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            terms[(a, b)] = scale * (rng.standard_normal() + 1j * rng.standard_normal()) / (1 + a + b)

    def f(z):
        zb = np.conj(z)
        return sum(c * z**a * zb**b for (a, b), c in terms.items())

    return f, terms
