"""Quantum channels in Kraus form and their basic algebra.

Index conventions
-----------------
The Choi matrix is ``D = sum_ij Phi(|i><j|) (x) |i><j|``: the channel acts on
the first tensor factor. With row-major flattening ``vec(A)[a*N + i] = A[a, i]``
this is ``D = sum_k vec(A_k) vec(A_k)^dag``, so an eigenvector of ``D`` is
turned back into a Kraus operator by a row-major reshape to ``N x N``. This is
the only place where the index order is fixed; everything else goes through
:func:`choi` and :func:`canonical_kraus`.

Two channels are equal when their Choi matrices are equal. Kraus lists are
never compared directly.
"""
from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from .errors import DimensionMismatch, NotHermitian, NotPositive

TP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """A map ``rho -> sum_i A_i rho A_i^dag`` on ``N x N`` matrices.

    The Kraus operators are stored as read-only arrays. Trace preservation is
    not enforced here since duals of non-unital channels are legitimate objects
    to inspect; use :func:`is_trace_preserving` or :func:`validate`.
    """

    kraus: tuple

    def __post_init__(self):
        ops = [nk.as_matrix(a).copy() for a in self.kraus]
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        n = ops[0].shape[0]
        for a in ops:
            if a.shape != (n, n):
                raise DimensionMismatch(
                    f"Kraus operators must all be {n}x{n}, got {a.shape}"
                )
            a.flags.writeable = False
        object.__setattr__(self, "kraus", tuple(ops))

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def k(self) -> int:
        return len(self.kraus)

    def __call__(self, rho):
        return apply(self, rho)

    def __repr__(self):
        return f"QuantumChannel(dim={self.dim}, k={self.k})"


def from_kraus(ops) -> QuantumChannel:
    return QuantumChannel(tuple(ops))


def identity_channel(n: int) -> QuantumChannel:
    return QuantumChannel((np.eye(n),))


def _check_same_dim(phi1, phi2):
    if phi1.dim != phi2.dim:
        raise DimensionMismatch(f"channel dimensions differ: {phi1.dim} vs {phi2.dim}")


def apply(phi: QuantumChannel, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (phi.dim, phi.dim):
        raise DimensionMismatch(
            f"state of shape {rho.shape} does not match channel dimension {phi.dim}"
        )
    out = np.zeros_like(rho)
    for a in phi.kraus:
        out += a @ rho @ nk.dagger(a)
    return out


def superoperator(phi: QuantumChannel) -> np.ndarray:
    """Matrix of the channel acting on row-major vectorized states."""
    return sum(np.kron(a, np.conj(a)) for a in phi.kraus)


def choi(phi: QuantumChannel) -> np.ndarray:
    vecs = np.stack([a.reshape(-1) for a in phi.kraus], axis=1)
    return vecs @ nk.dagger(vecs)


def _lex_key(a):
    flat = np.round(a.reshape(-1), 12)
    return tuple(x for z in flat for x in (-z.real, -z.imag))


def canonical_kraus(phi: QuantumChannel, rtol: float = 1e-10) -> QuantumChannel:
    """Trace-orthogonal Kraus form from the Choi eigendecomposition.

    Weights ``d_i = Tr A_i A_i^dag`` come out descending; eigenvalues at or
    below ``rtol * N`` are dropped. Within a degenerate weight the operators are
    ordered lexicographically by entries, which is a convention only.
    """
    values, vectors = nk.herm_eig(choi(phi))
    n = phi.dim
    keep = [i for i in range(len(values)) if values[i] > rtol * n]
    if not keep:
        raise ValueError("channel is the zero map")
    ops = [np.sqrt(values[i]) * vectors[:, i].reshape(n, n) for i in keep]
    weights = [float(values[i]) for i in keep]
    order = sorted(range(len(ops)), key=lambda i: -weights[i])
    # regroup near-equal weights and sort each group lexicographically
    grouped = []
    for i in order:
        if grouped and abs(weights[grouped[-1][0]] - weights[i]) < 1e-9:
            grouped[-1].append(i)
        else:
            grouped.append([i])
    final = []
    for group in grouped:
        final.extend(sorted(group, key=lambda i: _lex_key(ops[i])))
    return QuantumChannel(tuple(ops[i] for i in final))


def kraus_weights(phi: QuantumChannel) -> np.ndarray:
    """``Tr A_i A_i^dag`` for each Kraus operator, in list order."""
    return np.array([float(np.real(np.vdot(a, a))) for a in phi.kraus])


def dual(phi: QuantumChannel) -> QuantumChannel:
    return QuantumChannel(tuple(nk.dagger(a) for a in phi.kraus))


def compose(phi2: QuantumChannel, phi1: QuantumChannel) -> QuantumChannel:
    """The channel ``phi2 o phi1`` (``phi1`` acts first)."""
    _check_same_dim(phi1, phi2)
    return QuantumChannel(tuple(b @ a for a in phi1.kraus for b in phi2.kraus))


def unitary_conjugation(u) -> QuantumChannel:
    """``Psi_U(rho) = U rho U^dag`` without a unitarity check."""
    return QuantumChannel((u,))


def trace_residual(phi: QuantumChannel) -> float:
    s = sum(nk.dagger(a) @ a for a in phi.kraus)
    return nk.frob(s - np.eye(phi.dim))


def unital_residual(phi: QuantumChannel) -> float:
    s = sum(a @ nk.dagger(a) for a in phi.kraus)
    return nk.frob(s - np.eye(phi.dim))


def is_trace_preserving(phi: QuantumChannel, tol: float = TP_TOL) -> bool:
    return trace_residual(phi) < tol


def is_unital(phi: QuantumChannel, tol: float = TP_TOL) -> bool:
    return unital_residual(phi) < tol


def is_bistochastic(phi: QuantumChannel, tol: float = TP_TOL) -> bool:
    return is_trace_preserving(phi, tol) and is_unital(phi, tol)


def is_selfdual(phi: QuantumChannel, tol: float = TP_TOL) -> bool:
    return channels_equal(phi, dual(phi), tol)


def choi_distance(phi1: QuantumChannel, phi2: QuantumChannel) -> float:
    _check_same_dim(phi1, phi2)
    return nk.frob(choi(phi1) - choi(phi2))


def channels_equal(phi1: QuantumChannel, phi2: QuantumChannel, tol: float = TP_TOL) -> bool:
    _check_same_dim(phi1, phi2)
    return float(np.max(np.abs(choi(phi1) - choi(phi2)))) < tol


def choi_spectrum(phi: QuantumChannel) -> np.ndarray:
    return nk.herm_eig(choi(phi)).values


def choi_spectra_equal(phi1: QuantumChannel, phi2: QuantumChannel, tol: float = TP_TOL) -> bool:
    """Necessary condition for unitary equivalence: equal sorted Choi spectra."""
    _check_same_dim(phi1, phi2)
    return float(np.max(np.abs(choi_spectrum(phi1) - choi_spectrum(phi2)))) < tol


def is_density(rho, tol: float = nk.DEFAULT_TOL) -> bool:
    try:
        validate_density(rho, tol)
    except (NotHermitian, NotPositive, DimensionMismatch, ValueError):
        return False
    return True


def validate_density(rho, tol: float = nk.DEFAULT_TOL) -> np.ndarray:
    """Return ``rho`` as an array, raising unless it is a unit-trace PSD Hermitian matrix."""
    rho = nk.as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"state of shape {rho.shape} is not square")
    if not nk.is_hermitian(rho, tol):
        raise NotHermitian("density matrix is not Hermitian")
    if np.linalg.eigvalsh(0.5 * (rho + nk.dagger(rho)))[0] < -tol:
        raise NotPositive("density matrix has a negative eigenvalue")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho).real:.12g}")
    return rho
