import numpy as np
import pytest

from qreversal import channel as ch
from qreversal import zoo
from qreversal.reversal import essential_map
from qreversal.thermo import MeasurementPair, transition_table

from conftest import ket, proj


def test_pauli_channel_examples():
    assert ch.channels_equal(zoo.pauli_channel(zoo.PauliChannelSpec((1, 0, 0, 0))), ch.identity_channel(2))
    uniform = zoo.pauli_channel(zoo.PauliChannelSpec((0.25,) * 4))
    np.testing.assert_allclose(ch.choi(uniform), np.eye(4) / 2, atol=1e-15)
    assert ch.channels_equal(uniform, zoo.depolarizing_channel(2))


@pytest.mark.parametrize("seed", range(20))
def test_pauli_channel_is_bistochastic_and_selfdual(seed):
    r = np.random.default_rng(seed)
    spec = zoo.PauliChannelSpec(tuple(r.dirichlet(np.ones(4))), tuple(r.permutation(zoo.PAULI_LABELS)))
    phi = zoo.pauli_channel(spec)
    assert ch.is_bistochastic(phi) and ch.is_selfdual(phi)
    w = zoo.pauli_weights(phi)
    for p, o in zip(spec.probs, spec.ops):
        assert abs(w[o] - p) < 1e-14


@pytest.mark.parametrize("bad", [((0.5, 0.5, 0.5, -0.5), "IXYZ"), ((0.5, 0.5), "IX"),
                                 ((0.2, 0.2, 0.2, 0.2), "IXYZ"), ((0.25,) * 4, "IXXZ")])
def test_pauli_spec_validation(bad):
    with pytest.raises(ValueError):
        zoo.PauliChannelSpec(bad[0], tuple(bad[1]))


def test_decaying_channel_examples():
    assert ch.channels_equal(zoo.decaying_channel(0.0), ch.identity_channel(2))
    assert ch.canonical_kraus(zoo.decaying_channel(0.0)).k == 1
    np.testing.assert_allclose(zoo.decaying_channel(1.0)(proj(ket(2, 1))), proj(ket(2, 0)))
    d = zoo.decaying_channel(0.36)
    np.testing.assert_allclose(d.kraus[0], [[0, 0.6], [0, 0]], atol=1e-15)
    np.testing.assert_allclose(d.kraus[1], [[1, 0], [0, 0.8]], atol=1e-15)
    for p in np.linspace(0.01, 1, 12):
        assert not ch.is_unital(zoo.decaying_channel(p))
    with pytest.raises(ValueError):
        zoo.decaying_channel(1.2)


def test_depolarizing_and_unitary():
    for n in (2, 3, 4):
        phi = zoo.depolarizing_channel(n)
        assert ch.canonical_kraus(phi).k == n * n
        psi = zoo.random_unitary(n, n)[:, 0]
        np.testing.assert_allclose(phi(proj(psi)), np.eye(n) / n, atol=1e-15)
        h = np.diag(np.arange(n, dtype=float))
        table = transition_table(phi, phi, MeasurementPair(h, h))
        np.testing.assert_allclose(table.forward, np.full((n, n), 1 / n), atol=1e-15)
    assert ch.channels_equal(zoo.unitary_channel(np.eye(3)), ch.identity_channel(3))
    assert ch.canonical_kraus(zoo.unitary_channel(zoo.random_unitary(3, 0))).k == 1
    with pytest.raises(ValueError):
        zoo.unitary_channel(np.array([[1, 1], [0, 1]]))


def test_random_generators():
    assert ch.is_trace_preserving(zoo.random_channel(2, 4, seed=7))
    assert ch.is_bistochastic(zoo.random_bistochastic(3, seed=1))
    a, b = zoo.random_channel(3, 5, seed=3), zoo.random_channel(3, 5, seed=3)
    assert all(np.array_equal(x, y) for x, y in zip(a.kraus, b.kraus))
    assert np.array_equal(zoo.random_unitary(4, 2), zoo.random_unitary(4, 2))
    assert np.array_equal(zoo.random_density(4, 2), zoo.random_density(4, 2))
    assert ch.is_density(zoo.random_density(5, 1))
    with pytest.raises(ValueError):
        zoo.random_channel(2, 5)


@pytest.mark.parametrize("seed", range(20))
def test_random_channel_rank_bound(seed):
    n = 2 + seed % 3
    phi = zoo.random_channel(n, n * n, seed)
    assert abs(ch.trace_residual(phi)) < 1e-12
    assert ch.canonical_kraus(phi).k <= n * n


def test_simplex_coordinates():
    np.testing.assert_allclose(zoo.pauli_simplex_coordinates(zoo.PauliChannelSpec((1, 0, 0, 0))), [1, 1, 1])
    np.testing.assert_allclose(zoo.pauli_simplex_coordinates(zoo.PauliChannelSpec((0.25,) * 4)), [0, 0, 0],
                               atol=1e-15)
    v = list(zoo.SIMPLEX_VERTICES.values())
    dists = {round(float(np.linalg.norm(a - b)), 12) for i, a in enumerate(v) for b in v[i + 1:]}
    assert len(dists) == 1


@pytest.mark.parametrize("seed", range(30))
def test_essential_point_has_dominant_identity_weight(seed):
    r = np.random.default_rng(seed)
    spec = zoo.PauliChannelSpec(tuple(r.dirichlet(np.ones(4))), tuple(r.permutation(zoo.PAULI_LABELS)))
    ess = zoo.pauli_spec_of(essential_map(zoo.pauli_channel(spec)).essential)
    w = ess.weights()
    assert w["I"] >= max(w["X"], w["Y"], w["Z"]) - 1e-12
