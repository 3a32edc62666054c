"""Two-point measurement statistics, entropy production and fluctuation relations.

A forward run prepares an eigenstate ``|a>`` of the initial observable, applies
``phi`` and measures the final observable, landing in ``|o>``. The reversed run
starts from ``|o>``, applies ``phiR`` and measures ``|a>``. The entropy
production of the pair is ``log(forward / backward)`` and the work is
``(E_o - E_a) + dS / beta``. Heat is counted positive from system to bath.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import numkernel as nk
from .channel import QuantumChannel
from .errors import DimensionMismatch, UndefinedTransition

ZERO_PROB = 1e-14
BIN_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MeasurementPair:
    """Initial observable ``hi``, final observable ``hf`` and inverse temperature."""

    hi: np.ndarray
    hf: np.ndarray
    beta: float = 1.0
    ei: np.ndarray = field(init=False, repr=False)
    vi: np.ndarray = field(init=False, repr=False)
    ef: np.ndarray = field(init=False, repr=False)
    vf: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        hi, hf = nk.as_matrix(self.hi), nk.as_matrix(self.hf)
        if hi.shape != hf.shape:
            raise DimensionMismatch(f"observables have shapes {hi.shape} and {hf.shape}")
        ei, vi = nk.herm_eig(hi, tol=nk.DEFAULT_TOL)
        ef, vf = nk.herm_eig(hf, tol=nk.DEFAULT_TOL)
        for name, value in (("hi", hi), ("hf", hf), ("ei", ei), ("vi", vi), ("ef", ef), ("vf", vf)):
            object.__setattr__(self, name, value)

    @property
    def dim(self) -> int:
        return self.hi.shape[0]

    def populations_initial(self) -> np.ndarray:
        return _boltzmann(self.ei, self.beta)

    def populations_final(self) -> np.ndarray:
        return _boltzmann(self.ef, self.beta)

    def log_partition_ratio(self) -> float:
        """``log(Z_f / Z_i)``."""
        return _log_z(self.ef, self.beta) - _log_z(self.ei, self.beta)

    def delta_f(self) -> float:
        return -self.log_partition_ratio() / self.beta


def _log_z(energies, beta):
    x = -beta * np.asarray(energies)
    top = float(np.max(x))
    return top + math.log(float(np.sum(np.exp(x - top))))


def _boltzmann(energies, beta):
    x = -beta * np.asarray(energies)
    w = np.exp(x - np.max(x))
    return w / w.sum()


def gibbs(h, beta: float) -> np.ndarray:
    """``exp(-beta h) / Z``."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    values, vectors = nk.herm_eig(h)
    return (vectors * _boltzmann(values, beta)) @ nk.dagger(vectors)


@dataclass(frozen=True, eq=False)
class TransitionTable:
    """``forward[a, o] = <o|phi(|a><a|)|o>``, ``backward[a, o] = <a|phiR(|o><o|)|a>``."""

    forward: np.ndarray
    backward: np.ndarray


def _transition_probs(phi, start, end):
    # probs[s, e] = sum_i |<end_e| A_i |start_s>|^2
    probs = np.zeros((start.shape[1], end.shape[1]))
    for a in phi.kraus:
        amp = nk.dagger(end) @ a @ start  # [e, s]
        probs += (np.abs(amp) ** 2).T
    return probs


def transition_table(phi: QuantumChannel, phi_r: QuantumChannel, pair: MeasurementPair) -> TransitionTable:
    if not phi.dim == phi_r.dim == pair.dim:
        raise DimensionMismatch(
            f"dimensions differ: phi {phi.dim}, phiR {phi_r.dim}, observables {pair.dim}"
        )
    forward = _transition_probs(phi, pair.vi, pair.vf)
    backward = _transition_probs(phi_r, pair.vf, pair.vi).T
    return TransitionTable(forward, backward)


def entropy_production(table: TransitionTable, a: int, o: int, zero: float = ZERO_PROB) -> float:
    """``log(forward / backward)`` for the transition ``a -> o``.

    Returns ``+inf`` when only the forward transition is possible and ``-inf``
    when only the backward one is. Raises :class:`UndefinedTransition` if
    neither is.
    """
    f, b = table.forward[a, o], table.backward[a, o]
    if f <= zero and b <= zero:
        raise UndefinedTransition(f"transition {a} -> {o} has zero probability both ways")
    if b <= zero:
        return math.inf
    if f <= zero:
        return -math.inf
    return math.log(f / b)


def entropy_table(table: TransitionTable) -> np.ndarray:
    """All cells of :func:`entropy_production`; undefined cells are NaN."""
    n, m = table.forward.shape
    out = np.empty((n, m))
    for a in range(n):
        for o in range(m):
            try:
                out[a, o] = entropy_production(table, a, o)
            except UndefinedTransition:
                out[a, o] = math.nan
    return out


def work(pair: MeasurementPair, table: TransitionTable, a: int, o: int) -> float:
    ds = entropy_production(table, a, o)
    return float(pair.ef[o] - pair.ei[a]) + ds / pair.beta


@dataclass(frozen=True)
class JarzynskiResult:
    lhs: float
    rhs: float
    residual: float
    average: float


def jarzynski_check(phi: QuantumChannel, phi_r: QuantumChannel, pair: MeasurementPair,
                    table: TransitionTable | None = None) -> JarzynskiResult:
    """Compare ``<exp(-beta dW)>`` with ``Z_f / Z_i``.

    ``lhs`` is summed as ``p_a exp(beta E_a) backward(a, o) exp(-beta E_o)`` so
    that impossible transitions contribute exactly zero. ``average`` is the
    literal ``sum p_a forward exp(-beta dW)`` with infinite work counted as
    zero; it differs from ``lhs`` only where forward vanishes but backward does
    not.
    """
    table = table or transition_table(phi, phi_r, pair)
    beta = pair.beta
    log_pi = np.log(pair.populations_initial())
    lhs = 0.0
    average = 0.0
    n = pair.dim
    for a in range(n):
        for o in range(n):
            expo = log_pi[a] + beta * pair.ei[a] - beta * pair.ef[o]
            lhs += table.backward[a, o] * math.exp(expo)
            f = table.forward[a, o]
            if f > ZERO_PROB:
                dw = work(pair, table, a, o)
                if dw != math.inf:
                    average += math.exp(log_pi[a]) * f * math.exp(-beta * dw)
    rhs = math.exp(pair.log_partition_ratio())
    return JarzynskiResult(lhs, rhs, abs(lhs - rhs), average)


@dataclass(frozen=True)
class CrooksBin:
    """One work value ``x`` with ``P^F(x)``, ``P^R(-x)`` and the relation's residual."""

    x: float
    pf: float
    pr: float
    residual: float


@dataclass(frozen=True)
class InfiniteWorkAtom:
    """A transition whose work is infinite; kept out of the binned relation."""

    a: int
    o: int
    work: float
    pf: float
    pr: float


@dataclass(frozen=True)
class CrooksReport:
    bins: list
    infinite: list

    @property
    def max_residual(self) -> float:
        return max((b.residual for b in self.bins), default=0.0)


def _bin_atoms(atoms, tol):
    """Group ``(x, pf, pr)`` atoms whose sorted work values are closer than ``tol``."""
    atoms = sorted(atoms, key=lambda t: t[0])
    groups = []
    for atom in atoms:
        if groups and atom[0] - groups[-1][-1][0] < tol:
            groups[-1].append(atom)
        else:
            groups.append([atom])
    return groups


def work_distributions(pair: MeasurementPair, table: TransitionTable, tol: float = BIN_TOL):
    """Binned forward and reversed work distributions as ``[(x, weight), ...]``.

    The reversed list is in terms of the reversed work ``dW^R = -dW``. Atoms at
    infinite work are left out.
    """
    pi, pf_ = pair.populations_initial(), pair.populations_final()
    fwd, rev = [], []
    for a in range(pair.dim):
        for o in range(pair.dim):
            try:
                dw = work(pair, table, a, o)
            except UndefinedTransition:
                continue
            if not math.isfinite(dw):
                continue
            fwd.append((dw, pi[a] * table.forward[a, o], 0.0))
            rev.append((-dw, pf_[o] * table.backward[a, o], 0.0))
    merge = lambda atoms: [(g[0][0], sum(t[1] for t in g)) for g in _bin_atoms(atoms, tol)]
    return merge(fwd), merge(rev)


def crooks_check(phi: QuantumChannel, phi_r: QuantumChannel, pair: MeasurementPair,
                 bin_tol: float = BIN_TOL, table: TransitionTable | None = None) -> CrooksReport:
    """Check ``P^R(-x) = exp(-beta (x - dF)) P^F(x)`` bin by bin.

    Forward atoms sit at ``dW[a, o]`` with weight ``p_i(a) forward(a, o)``;
    reversed atoms at ``-dW[a, o]`` with weight ``p_f(o) backward(a, o)``.
    Both are placed on the forward work axis and binned together. The
    right-hand side of each bin sums ``exp(-beta (x_m - dF)) pf_m`` over its
    members, so atoms merged by binning keep their own work value.
    """
    table = table or transition_table(phi, phi_r, pair)
    beta, d_f = pair.beta, pair.delta_f()
    pi, pfin = pair.populations_initial(), pair.populations_final()
    atoms, infinite = [], []
    for a in range(pair.dim):
        for o in range(pair.dim):
            try:
                dw = work(pair, table, a, o)
            except UndefinedTransition:
                continue
            wf = pi[a] * table.forward[a, o]
            wr = pfin[o] * table.backward[a, o]
            if math.isfinite(dw):
                atoms.append((dw, wf, wr))
            else:
                # +inf: forward-only, no reversed partner; -inf: forward weight is zero
                infinite.append(InfiniteWorkAtom(a, o, dw, wf if dw > 0 else 0.0, wr))
    bins = []
    for group in _bin_atoms(atoms, bin_tol):
        pf = sum(t[1] for t in group)
        pr = sum(t[2] for t in group)
        predicted = sum(math.exp(-beta * (t[0] - d_f)) * t[1] for t in group)
        bins.append(CrooksBin(group[0][0], pf, pr, abs(pr - predicted)))
    return CrooksReport(bins, infinite)
