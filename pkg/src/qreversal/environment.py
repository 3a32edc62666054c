"""Environmental (Stinespring) representations and their time reversal.

A representation is ``Phi(rho) = Tr_B[U (rho (x) sigma) U^dag]`` with the system
as the first tensor factor. Time inversion is taken as plain complex
conjugation ``Theta`` in the computational product basis, so
``U~ = Theta U^dag Theta^-1 = U^T`` and ``sigma~ = conj(sigma)``.
"""
from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from .channel import QuantumChannel, canonical_kraus

ORTH_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class EnvironmentalRepresentation:
    dim_a: int
    dim_b: int
    u: np.ndarray
    sigma: np.ndarray

    def apply(self, rho) -> np.ndarray:
        joint = np.kron(np.asarray(rho, dtype=np.complex128), self.sigma)
        return nk.partial_trace(self.u @ joint @ nk.dagger(self.u), self.dim_a, self.dim_b, keep="A")

    def to_channel(self) -> QuantumChannel:
        """Kraus form ``(1 (x) <l|) U (1 (x) sqrt(s_m)|m>)`` over environment indices."""
        return _kraus_from_dilation(self.u, self.sigma, self.dim_a, self.dim_b)


def _kraus_from_dilation(u, sigma, dim_a, dim_b):
    vals, vecs = nk.herm_eig(sigma)
    blocks = u.reshape(dim_a, dim_b, dim_a, dim_b)
    ops = []
    for s, m in zip(vals, vecs.T):
        if s <= 1e-14:
            continue
        # (1 x <l|) U (1 x |m>) for every l
        col = np.einsum("albm,m->alb", blocks, m)
        for l in range(dim_b):
            ops.append(np.sqrt(s) * col[:, l, :])
    return QuantumChannel(tuple(ops))


def _complete_isometry(iso, dim):
    """Extend orthonormal columns to a unitary using standard basis candidates in index order."""
    cols = [iso[:, j] for j in range(iso.shape[1])]
    for e in range(dim):
        if len(cols) == dim:
            break
        v = np.zeros(dim, dtype=np.complex128)
        v[e] = 1.0
        for _ in range(2):
            for c in cols:
                v = v - np.vdot(c, v) * c
        norm = np.linalg.norm(v)
        if norm > ORTH_TOL:
            cols.append(v / norm)
    return np.stack(cols, axis=1)


def stinespring(phi: QuantumChannel) -> EnvironmentalRepresentation:
    """Dilation with environment dimension equal to the canonical Kraus rank.

    The environment starts in ``|0><0|``. Column ``j*k`` of ``U`` is
    ``sum_i A_i|j> (x) |i>``; the remaining columns are filled deterministically.
    """
    canon = canonical_kraus(phi)
    n, k = phi.dim, canon.k
    iso = np.stack(canon.kraus, axis=1).reshape(n * k, n)  # rows (a, i), cols j
    total = n * k
    u = np.zeros((total, total), dtype=np.complex128)
    # the isometry fills columns (j, 0); the rest are completed
    image = [j * k for j in range(n)]
    full = _complete_isometry(iso, total)
    others = [c for c in range(total) if c not in image]
    u[:, image] = full[:, :n]
    u[:, others] = full[:, n:]
    sigma = np.zeros((k, k), dtype=np.complex128)
    sigma[0, 0] = 1.0
    return EnvironmentalRepresentation(n, k, u, sigma)


def time_invert(rep: EnvironmentalRepresentation) -> EnvironmentalRepresentation:
    """Representation with ``U -> U^T`` and ``sigma -> conj(sigma)``."""
    return EnvironmentalRepresentation(rep.dim_a, rep.dim_b, rep.u.T.copy(), np.conj(rep.sigma))


def environmental_reverse(rep: EnvironmentalRepresentation) -> QuantumChannel:
    return time_invert(rep).to_channel()


def theta(m) -> np.ndarray:
    """The antiunitary time inversion acting on an operator: ``Theta m Theta^-1 = conj(m)``."""
    return np.conj(m)
