"""Named channels and seeded random generators."""
from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from .channel import QuantumChannel, choi

# bump when any generator below changes its output for a given seed
GENERATOR_VERSION = 1

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
PAULI_LABELS = ("I", "X", "Y", "Z")

# vertices of a regular tetrahedron centred at the origin
SIMPLEX_VERTICES = {
    "I": np.array([1.0, 1.0, 1.0]),
    "X": np.array([1.0, -1.0, -1.0]),
    "Y": np.array([-1.0, 1.0, -1.0]),
    "Z": np.array([-1.0, -1.0, 1.0]),
}


@dataclass(frozen=True)
class PauliChannelSpec:
    """Probabilities ``probs[j]`` attached to Pauli operators ``ops[j]``."""

    probs: tuple
    ops: tuple = PAULI_LABELS

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        ops = tuple(str(o).upper() for o in self.ops)
        if len(probs) != 4 or len(ops) != 4:
            raise ValueError("a Pauli channel needs exactly four probabilities and four operators")
        if sorted(ops) != sorted(PAULI_LABELS):
            raise ValueError(f"ops must be a permutation of I, X, Y, Z, got {ops}")
        if any(p < 0 or not np.isfinite(p) for p in probs):
            raise ValueError(f"probabilities must be nonnegative, got {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, not 1")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "ops", ops)

    def weights(self) -> dict:
        return dict(zip(self.ops, self.probs))


def pauli_channel(spec: PauliChannelSpec) -> QuantumChannel:
    return QuantumChannel(tuple(np.sqrt(p) * PAULI[o] for p, o in zip(spec.probs, spec.ops)))


def pauli_weights(phi: QuantumChannel) -> dict:
    """Conjugation weights of a qubit channel on ``I, X, Y, Z``.

    Reads the diagonal of the Choi matrix in the (orthogonal) Pauli basis. For
    a Pauli channel these are exactly its probabilities.
    """
    if phi.dim != 2:
        raise ValueError("Pauli weights are defined for qubit channels only")
    d = choi(phi)
    out = {}
    for label in PAULI_LABELS:
        v = PAULI[label].reshape(-1)
        out[label] = float(np.real(np.vdot(v, d @ v))) / 4.0
    return out


def pauli_spec_of(phi: QuantumChannel) -> PauliChannelSpec:
    """Pauli spec carrying the conjugation weights of a qubit channel (clipped at 0)."""
    w = np.clip([pauli_weights(phi)[o] for o in PAULI_LABELS], 0.0, None)
    return PauliChannelSpec(tuple(w / w.sum()), PAULI_LABELS)


def pauli_simplex_coordinates(spec: PauliChannelSpec) -> np.ndarray:
    """Cartesian point of a Pauli channel inside the regular tetrahedron of ``I, X, Y, Z``."""
    return sum(p * SIMPLEX_VERTICES[o] for p, o in zip(spec.probs, spec.ops))


def decaying_channel(p: float) -> QuantumChannel:
    """Amplitude decay ``|1> -> |0>`` with probability ``p``; jump operator listed first."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decay probability must be in [0, 1], got {p}")
    jump = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])
    stay = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]])
    return QuantumChannel((jump, stay))


def depolarizing_channel(n: int) -> QuantumChannel:
    """Maximally depolarizing channel, Kraus ``|i><j| / sqrt(n)``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    ops = []
    for i in range(n):
        for j in range(n):
            a = np.zeros((n, n), dtype=np.complex128)
            a[i, j] = 1.0 / np.sqrt(n)
            ops.append(a)
    return QuantumChannel(tuple(ops))


def unitary_channel(u, tol: float = nk.DEFAULT_TOL) -> QuantumChannel:
    u = nk.as_matrix(u)
    if u.shape[0] != u.shape[1] or nk.frob(nk.dagger(u) @ u - np.eye(len(u))) > tol:
        raise ValueError("matrix is not unitary")
    return QuantumChannel((u,))


def _ginibre(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def _orthonormalize(g):
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_unitary(n: int, seed=None) -> np.ndarray:
    """Haar unitary from the QR decomposition of a Ginibre matrix."""
    rng = np.random.default_rng(seed)
    return _orthonormalize(_ginibre(rng, n, n))


def random_channel(n: int, k: int, seed=None) -> QuantumChannel:
    """Channel with ``k`` Kraus operators cut from a random ``n*k x n`` isometry."""
    if n < 1 or not 1 <= k <= n * n:
        raise ValueError(f"need n >= 1 and 1 <= k <= n^2, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    iso = _orthonormalize(_ginibre(rng, n * k, n))
    return QuantumChannel(tuple(iso[i * n:(i + 1) * n] for i in range(k)))


def random_bistochastic(n: int, seed=None, terms=None) -> QuantumChannel:
    """Random mixture of unitary conjugations (``terms`` defaults to ``n^2``)."""
    rng = np.random.default_rng(seed)
    m = terms or n * n
    weights = rng.dirichlet(np.ones(m))
    ops = []
    for w in weights:
        ops.append(np.sqrt(w) * _orthonormalize(_ginibre(rng, n, n)))
    return QuantumChannel(tuple(ops))


def random_density(n: int, seed=None, rank=None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = _ginibre(rng, n, rank or n)
    rho = g @ nk.dagger(g)
    return rho / np.trace(rho).real


def random_hermitian(n: int, seed=None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = _ginibre(rng, n, n)
    return 0.5 * (g + nk.dagger(g))
