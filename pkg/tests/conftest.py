import numpy as np
import pytest
from hypothesis import settings

from qreversal import zoo

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

SX = zoo.PAULI["X"]
SY = zoo.PAULI["Y"]
SZ = zoo.PAULI["Z"]


def rng(seed):
    return np.random.default_rng(seed)


def random_complex(n, seed):
    r = rng(seed)
    return r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))


def random_observable(n, seed):
    """Random Hermitian observable with ground energy 0 and spectral width 1."""
    h = zoo.random_hermitian(n, seed)
    vals = np.linalg.eigvalsh(h)
    h = (h - vals[0] * np.eye(n)) / (vals[-1] - vals[0])
    return h


def ket(n, i):
    v = np.zeros(n, dtype=np.complex128)
    v[i] = 1
    return v


def proj(v):
    v = np.asarray(v, dtype=np.complex128)
    return np.outer(v, v.conj())


@pytest.fixture
def decaying036():
    return zoo.decaying_channel(0.36)
