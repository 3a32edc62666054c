"""Time reversals of quantum channels.

The constructions available through :func:`reverse`:

* ``ESSENTIAL``: the intrinsic reversal built from the essential map,
  ``Phi^R = Psi_{V2} o Phi_hat o Psi_{V1^dag}`` with Kraus form
  ``{A_1^dag, Y A_2 Y, ...}``, ``Y = V2 V1^dag``.
* ``DUAL``: the dual map, only for unital channels.
* ``CROOKS``: ``rho*^{1/2} A_i^dag rho*^{-1/2}`` using the invariant state.
* ``TWO_KRAUS``: ``{A_l^dag, sqrt(1 - A_l A_l^dag)}`` for a two-operator
  channel with a user-chosen leading operator ``A_l``.
* ``ENVIRONMENTAL``: delegated to :mod:`qreversal.environment`.

Throughout, ``Psi_V(rho) = V rho V^dag``.
"""
import enum
from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from .channel import (
    QuantumChannel,
    apply,
    canonical_kraus,
    choi,
    dual,
    is_unital,
    superoperator,
    unital_residual,
)
from .errors import NonUniqueFixedPoint, NotPositive, NotUnital, SingularState, WrongKrausCount

FIXED_POINT_TOL = 1e-8
DEGENERATE_TOL = 1e-9


class ReversalMethod(enum.Enum):
    ESSENTIAL = "essential"
    DUAL = "dual"
    CROOKS = "crooks"
    TWO_KRAUS = "two-kraus"
    ENVIRONMENTAL = "environmental"


@dataclass(frozen=True, eq=False)
class EssentialDecomposition:
    """``Phi = Psi_{V1} o essential o Psi_{V2^dag}``.

    The first Kraus operator of ``essential`` is the real nonnegative diagonal
    matrix ``E`` with descending entries, and ``A_1 = V1 E V2^dag``.
    """

    essential: QuantumChannel
    v1: np.ndarray
    v2: np.ndarray

    @property
    def leading(self) -> np.ndarray:
        return self.essential.kraus[0]

    def reconstruct(self) -> QuantumChannel:
        return QuantumChannel(tuple(self.v1 @ b @ nk.dagger(self.v2) for b in self.essential.kraus))


def _is_degenerate(values, tol=DEGENERATE_TOL):
    values = np.asarray(values)
    scale = max(1.0, float(values[0]))
    return bool(np.any(np.abs(np.diff(values)) < tol * scale))


def _diagonal_gauge(ops, n):
    """Diagonal unitary ``D`` fixing the phase freedom ``B -> D^dag B D``.

    Works on Choi entries ``C[a,i,b,c]``, which pick up the factor
    ``conj(d_a) d_i d_b conj(d_c)`` under the gauge and do not depend on
    per-operator phases. For each ``j > 0`` the largest entry carrying the
    factor ``d_j conj(d_0)`` is made real positive. Columns with no such entry
    keep phase 1.
    """
    c = choi(QuantumChannel(tuple(ops))).reshape(n, n, n, n)
    phases = np.ones(n, dtype=np.complex128)
    for j in range(1, n):
        cands = []
        for x in range(n):
            cands += [c[0, j, x, x], c[x, j, x, 0], c[0, x, j, x], c[x, x, j, 0]]
        z = max(cands, key=abs)
        if abs(z) > 1e-9:
            phases[j] = np.conj(z) / abs(z)
    return np.diag(phases)


def essential_map(phi: QuantumChannel) -> EssentialDecomposition:
    """Essential map of ``phi`` together with the rotations ``V1, V2``.

    The channel is brought to canonical Kraus form (norm-ordered), the leading
    operator is decomposed as ``A_1 = V1 E V2^dag`` and every operator rotated to
    ``B_i = V1^dag A_i V2``.

    If ``E`` is proportional to the identity the leading operator is a scaled
    unitary ``s U`` and the choice ``V1 = U``, ``V2 = 1`` is used. When ``E`` is
    non-degenerate the leftover diagonal phase freedom is fixed by
    :func:`_diagonal_gauge`; with other degeneracies the result is one valid
    decomposition among many.
    """
    canon = canonical_kraus(phi)
    a1 = canon.kraus[0]
    n = phi.dim
    dec = nk.svd(a1)
    s = dec.singulars
    if s[-1] > 0 and (s[0] - s[-1]) < DEGENERATE_TOL * max(1.0, s[0]):
        v1 = a1 / s[0]
        v2 = np.eye(n, dtype=np.complex128)
    else:
        v1, v2 = dec.left, dec.right
    ops = [nk.dagger(v1) @ a @ v2 for a in canon.kraus]
    if not _is_degenerate(s):
        gauge = _diagonal_gauge(ops, n)
        v1, v2 = v1 @ gauge, v2 @ gauge
        ops = [nk.dagger(gauge) @ b @ gauge for b in ops]
    ops[0] = np.diag(np.diag(ops[0]).real).astype(np.complex128)
    return EssentialDecomposition(QuantumChannel(tuple(ops)), v1, v2)


def essential_reverse(phi: QuantumChannel) -> QuantumChannel:
    dec = essential_map(phi)
    y = dec.v2 @ nk.dagger(dec.v1)
    canon = canonical_kraus(phi)
    return QuantumChannel(tuple(y @ a @ y for a in canon.kraus))


def essential_reverse_by_composition(phi: QuantumChannel) -> QuantumChannel:
    """``Psi_{V2} o Phi_hat o Psi_{V1^dag}`` assembled literally, for cross-checks."""
    dec = essential_map(phi)
    return QuantumChannel(
        tuple(dec.v2 @ b @ nk.dagger(dec.v1) for b in dec.essential.kraus)
    )


def invariant_state(phi: QuantumChannel, tol: float = FIXED_POINT_TOL) -> np.ndarray:
    """Unique fixed point ``rho* = phi(rho*)`` of a trace-preserving channel."""
    values, vectors = np.linalg.eig(superoperator(phi))
    dist = np.abs(values - 1.0)
    if np.count_nonzero(dist < tol) > 1:
        raise NonUniqueFixedPoint(
            f"eigenvalue 1 has multiplicity {np.count_nonzero(dist < tol)}"
        )
    idx = int(np.argmin(dist))
    n = phi.dim
    x = vectors[:, idx].reshape(n, n)
    x = x / np.trace(x)
    x = 0.5 * (x + nk.dagger(x))
    x = x / np.trace(x).real
    lowest = np.linalg.eigvalsh(x)[0]
    if lowest < -tol:
        raise NotPositive(f"fixed point has negative eigenvalue {lowest:.3e}")
    return x


def crooks_reverse(phi: QuantumChannel) -> QuantumChannel:
    rho = invariant_state(phi)
    root = nk.psd_sqrt(rho)
    try:
        inv_root = nk.psd_inv_sqrt(rho)
    except SingularState as exc:
        raise SingularState(f"invariant state not invertible ({exc})") from None
    return QuantumChannel(tuple(root @ nk.dagger(a) @ inv_root for a in phi.kraus))


def dual_reverse(phi: QuantumChannel, tol: float = 1e-9) -> QuantumChannel:
    if not is_unital(phi, tol):
        raise NotUnital(
            f"channel is not unital (||sum A A^dag - 1|| = {unital_residual(phi):.3e}); "
            "its dual is not trace preserving"
        )
    return dual(phi)


def two_kraus_reverse(phi: QuantumChannel, leading: int = 0) -> QuantumChannel:
    """``{A^dag, sqrt(1 - A A^dag)}`` with ``A = phi.kraus[leading]``.

    The Kraus list is used as given, not canonicalized, so the caller decides
    which operator leads. The result lists the reversed leading operator first.
    """
    if phi.k != 2:
        raise WrongKrausCount(f"two-Kraus reversal needs exactly 2 Kraus operators, got {phi.k}")
    if leading not in (0, 1):
        raise ValueError(f"leading index must be 0 or 1, got {leading}")
    a = phi.kraus[leading]
    rest = np.eye(phi.dim) - a @ nk.dagger(a)
    return QuantumChannel((nk.dagger(a), nk.psd_sqrt(rest, tol=1e-9)))


def reverse(phi: QuantumChannel, method=ReversalMethod.ESSENTIAL, leading: int = 0) -> QuantumChannel:
    method = ReversalMethod(method)
    if method is ReversalMethod.ESSENTIAL:
        return essential_reverse(phi)
    if method is ReversalMethod.DUAL:
        return dual_reverse(phi)
    if method is ReversalMethod.CROOKS:
        return crooks_reverse(phi)
    if method is ReversalMethod.TWO_KRAUS:
        return two_kraus_reverse(phi, leading)
    from .environment import environmental_reverse, stinespring

    return environmental_reverse(stinespring(phi))


def fixed_point_residual(phi: QuantumChannel, rho) -> float:
    return nk.frob(apply(phi, rho) - rho)
