"""Dense complex linear algebra for small square matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here is
a pure function; inputs are never modified.
"""
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPositive, SingularState

DEFAULT_TOL = 1e-10
HERMITIAN_TOL = 1e-8
SINGULAR_RTOL = 1e-12


class HermEig(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


class Svd(NamedTuple):
    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex128 array with finite entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def dagger(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def kron(a, b) -> np.ndarray:
    return np.kron(a, b)


def frob(m) -> float:
    return float(np.linalg.norm(m))


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``A (x) B``.

    The first tensor factor is ``A``. ``keep`` selects the surviving factor.
    """
    m = np.asarray(m)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise DimensionMismatch(f"matrix of shape {m.shape} is not {n}x{n}")
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ibjb->ij", t)
    if keep == "B":
        return np.einsum("aiaj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Return a copy whose columns each have their first largest-modulus entry real positive."""
    out = np.array(vectors, dtype=np.complex128, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = int(np.argmax(np.abs(col)))
        amp = abs(col[idx])
        if amp > 0:
            out[:, j] = col * (np.conj(col[idx]) / amp)
    return out


def hermitize(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Symmetrize ``m`` as ``(m + m^dag)/2``, refusing inputs that are far from Hermitian."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix of shape {m.shape} is not square")
    asym = frob(m - dagger(m))
    if asym > tol * max(1.0, frob(m)):
        raise NotHermitian(f"matrix is not Hermitian (||m - m^dag|| = {asym:.3e})")
    return 0.5 * (m + dagger(m))


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and frob(m - dagger(m)) <= tol


def herm_eig(m, tol: float = HERMITIAN_TOL) -> HermEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Eigenvector phases follow :func:`fix_phases` so the output is reproducible.
    """
    h = hermitize(m, tol)
    values, vectors = np.linalg.eigh(h)
    return HermEig(values, fix_phases(vectors))


def svd(m) -> Svd:
    """Singular value decomposition ``m = left @ diag(singulars) @ right^dag``.

    Singular values come out descending. Each left singular vector is rotated so
    that its first entry of largest modulus is real and positive, and the
    matching right vector gets the same phase. For degenerate singular values
    the factorization stays deterministic but is only one valid choice.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix of shape {m.shape} is not square")
    u, s, vh = np.linalg.svd(m)
    v = dagger(vh)
    for j in range(u.shape[1]):
        col = u[:, j]
        idx = int(np.argmax(np.abs(col)))
        amp = abs(col[idx])
        if amp > 0:
            phase = np.conj(col[idx]) / amp
            u[:, j] = col * phase
            v[:, j] = v[:, j] * phase
    return Svd(u, s, v)


def _psd_eig(m, tol):
    values, vectors = herm_eig(m)
    scale = max(1.0, float(np.max(np.abs(values))))
    if values[0] < -tol * scale:
        raise NotPositive(f"matrix has negative eigenvalue {values[0]:.3e}")
    return np.clip(values, 0.0, None), vectors


def psd_sqrt(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    values, vectors = _psd_eig(m, tol)
    return (vectors * np.sqrt(values)) @ dagger(vectors)


def psd_inv_sqrt(m, tol: float = DEFAULT_TOL, rtol: float = SINGULAR_RTOL) -> np.ndarray:
    """Inverse square root of a positive definite matrix.

    Raises :class:`SingularState` if any eigenvalue is at or below ``rtol``
    times the largest one.
    """
    values, vectors = _psd_eig(m, tol)
    if values[0] <= rtol * values[-1]:
        raise SingularState(
            f"matrix is not invertible (smallest eigenvalue {values[0]:.3e})"
        )
    return (vectors / np.sqrt(values)) @ dagger(vectors)


def psd_function(m, func) -> np.ndarray:
    """Apply a scalar function to the spectrum of a Hermitian matrix."""
    values, vectors = herm_eig(m)
    return (vectors * func(values)) @ dagger(vectors)
