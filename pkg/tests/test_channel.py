import numpy as np
import pytest

from qreversal import channel as ch
from qreversal import numkernel as nk
from qreversal import zoo
from qreversal.errors import DimensionMismatch

from conftest import SX, SY, SZ, ket, proj


def choi_by_definition(phi):
    """sum_ij phi(|i><j|) (x) |i><j|, evaluated by applying the channel."""
    n = phi.dim
    d = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n))
            e[i, j] = 1
            d += np.kron(ch.apply(phi, e), e)
    return d


def test_apply_decaying(decaying036):
    out = decaying036(proj(ket(2, 1)))
    np.testing.assert_allclose(out, np.diag([0.36, 0.64]), atol=1e-15)


def test_apply_identity_and_depolarizing():
    rho = zoo.random_density(3, seed=5)
    np.testing.assert_allclose(ch.identity_channel(3)(rho), rho)
    np.testing.assert_allclose(zoo.depolarizing_channel(3)(rho), np.eye(3) / 3, atol=1e-15)
    with pytest.raises(DimensionMismatch):
        ch.apply(ch.identity_channel(2), rho)


def test_apply_outputs_density():
    for seed in range(20):
        phi = zoo.random_channel(3, 1 + seed % 9, seed)
        assert ch.is_density(phi(zoo.random_density(3, seed + 100)), 1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_choi_matches_definition(seed):
    phi = zoo.random_channel(2 + seed % 2, 3, seed)
    np.testing.assert_allclose(ch.choi(phi), choi_by_definition(phi), atol=1e-14)


def test_choi_examples():
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    d = ch.choi(ch.identity_channel(2))
    np.testing.assert_allclose(d, 2 * np.outer(psi, psi), atol=1e-15)
    assert np.linalg.matrix_rank(d) == 1
    np.testing.assert_allclose(ch.choi(zoo.depolarizing_channel(2)), np.eye(4) / 2, atol=1e-15)
    for seed in range(5):
        phi = zoo.random_channel(3, 4, seed)
        assert np.isclose(np.trace(ch.choi(phi)), 3)
        # trace preservation restated: tracing out the output factor leaves 1
        np.testing.assert_allclose(nk.partial_trace(ch.choi(phi), 3, 3, "B"), np.eye(3), atol=1e-9)


def test_canonical_redundant_list_collapses():
    phi = ch.from_kraus([np.eye(2) / np.sqrt(2), np.eye(2) / np.sqrt(2)])
    c = ch.canonical_kraus(phi)
    assert c.k == 1
    np.testing.assert_allclose(c.kraus[0], np.eye(2), atol=1e-14)
    np.testing.assert_allclose(ch.kraus_weights(c), [2])


def test_canonical_decaying(decaying036):
    c = ch.canonical_kraus(decaying036)
    np.testing.assert_allclose(ch.kraus_weights(c), [1.64, 0.36], atol=1e-14)
    np.testing.assert_allclose(c.kraus[0], np.diag([1, 0.8]), atol=1e-14)


def test_canonical_pauli_weights():
    spec = zoo.PauliChannelSpec((0.4, 0.3, 0.2, 0.1))
    c = ch.canonical_kraus(zoo.pauli_channel(spec))
    np.testing.assert_allclose(ch.kraus_weights(c), [0.8, 0.6, 0.4, 0.2], atol=1e-14)


@pytest.mark.parametrize("seed", range(100))
def test_canonical_roundtrip_and_orthogonality(seed):
    n = 2 + seed % 2
    phi = zoo.random_channel(n, 1 + seed % (n * n), seed)
    c = ch.canonical_kraus(phi)
    assert c.k <= n * n
    assert nk.frob(ch.choi(c) - ch.choi(phi)) < 1e-9
    w = ch.kraus_weights(c)
    assert np.all(np.diff(w) <= 1e-12)
    for i in range(c.k):
        for j in range(i + 1, c.k):
            assert abs(np.trace(c.kraus[i] @ nk.dagger(c.kraus[j]))) < 1e-9


def test_dual_examples(decaying036):
    u = zoo.random_unitary(3, 2)
    d = ch.dual(zoo.unitary_channel(u))
    assert ch.channels_equal(d, zoo.unitary_channel(u.conj().T))
    pauli = zoo.pauli_channel(zoo.PauliChannelSpec((0.4, 0.3, 0.2, 0.1)))
    assert ch.channels_equal(ch.dual(pauli), pauli)
    dd = ch.dual(decaying036)
    assert not ch.is_trace_preserving(dd)
    np.testing.assert_allclose(sum(nk.dagger(a) @ a for a in dd.kraus), np.diag([1.36, 0.64]), atol=1e-15)


@pytest.mark.parametrize("seed", range(20))
def test_dual_of_trace_preserving_is_unital(seed):
    assert ch.is_unital(ch.dual(zoo.random_channel(3, 1 + seed % 9, seed)))


def test_compose_examples():
    u = zoo.random_unitary(2, 4)
    both = ch.compose(zoo.unitary_channel(u), zoo.unitary_channel(u.conj().T))
    assert ch.channels_equal(both, ch.identity_channel(2), 1e-12)
    for seed in range(10):
        phi = zoo.random_channel(2, 3, seed)
        assert ch.channels_equal(ch.compose(phi, ch.identity_channel(2)), phi)
        assert ch.channels_equal(ch.compose(zoo.depolarizing_channel(2), phi), zoo.depolarizing_channel(2))
    with pytest.raises(DimensionMismatch):
        ch.compose(ch.identity_channel(2), ch.identity_channel(3))


@pytest.mark.parametrize("seed", range(10))
def test_compose_is_sequential_application(seed):
    f, g = zoo.random_channel(3, 2, seed), zoo.random_channel(3, 4, seed + 50)
    rho = zoo.random_density(3, seed)
    assert nk.frob(ch.compose(f, g)(rho) - f(g(rho))) < 1e-9


def test_predicates(decaying036):
    pauli = zoo.pauli_channel(zoo.PauliChannelSpec((0.4, 0.3, 0.2, 0.1)))
    assert ch.is_bistochastic(pauli) and ch.is_selfdual(pauli)
    assert ch.is_trace_preserving(decaying036) and not ch.is_unital(decaying036)
    np.testing.assert_allclose(sum(a @ nk.dagger(a) for a in decaying036.kraus), np.diag([1.36, 0.64]), atol=1e-15)
    assert ch.is_bistochastic(zoo.unitary_channel(zoo.random_unitary(4, 1)))


def test_equality_and_spectra():
    a = ch.from_kraus([np.eye(2) / np.sqrt(2), np.eye(2) / np.sqrt(2)])
    assert ch.channels_equal(a, ch.identity_channel(2))
    assert not ch.channels_equal(zoo.decaying_channel(0.5), zoo.decaying_channel(0.25))
    u, v = zoo.random_unitary(3, 1), zoo.random_unitary(3, 2)
    phi = zoo.random_channel(3, 5, 9)
    rotated = ch.compose(zoo.unitary_channel(v), ch.compose(phi, zoo.unitary_channel(u)))
    assert ch.choi_spectra_equal(phi, rotated)
    assert not ch.channels_equal(phi, rotated)


def test_channel_is_immutable():
    phi = zoo.decaying_channel(0.3)
    with pytest.raises(ValueError):
        phi.kraus[0][0, 0] = 1.0
