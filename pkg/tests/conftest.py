import numpy as np
import pytest

from cliffcalc.algebra import CMultivector, Multivector, Paravector


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_mv(rng, n, complex_=False, scale=1.0):
    coeffs = rng.normal(scale=scale, size=1 << n)
    if complex_:
        return CMultivector(n, coeffs + 1j * rng.normal(scale=scale, size=1 << n))
    return Multivector(n, coeffs)


def random_pv(rng, n, scale=1.0):
    return Paravector(n, rng.normal(scale=scale, size=n + 1))


def random_nonreal_pv(rng, n, scale=1.0):
    while True:
        kappa = random_pv(rng, n, scale)
        if kappa.vector_norm > 0.2 * scale:
            return kappa
