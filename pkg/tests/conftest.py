import numpy as np
import pytest


def random_hermitian(rng, dim, scale=1.0):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = 0.5 * (m + m.conj().T)
    return scale * h / max(1.0, float(np.max(np.abs(np.linalg.eigvalsh(h)))))


def random_density(rng, dim, rank=None):
    rank = rank or dim
    m = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
