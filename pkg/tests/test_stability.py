import numpy as np
import pytest
import scipy.linalg

from rolecomm import markov_process, stability_score, transition_matrix
from rolecomm.stability import autocovariance

from conftest import random_connected_weights
from oracles import expm_taylor_squaring


def random_walk_matrix(w):
    k = w.sum(axis=1)
    return np.eye(w.shape[0]) - w / k[:, None]


def test_two_nodes():
    mp = markov_process(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(mp.pi, [0.5, 0.5])
    assert np.allclose(mp.eigenvalues, [0.0, 2.0], atol=1e-14)


def test_star():
    w = np.zeros((4, 4))
    w[0, 1:] = w[1:, 0] = 1.0
    mp = markov_process(w)
    assert np.allclose(mp.pi, [1 / 2, 1 / 6, 1 / 6, 1 / 6])


def test_spectrum(rng):
    mp = markov_process(random_connected_weights(rng, 25, p=0.1))
    lam = mp.eigenvalues
    assert lam.min() == pytest.approx(0.0, abs=1e-10)
    assert lam.max() <= 2 + 1e-10
    assert lam[1] > 1e-8  # connected: simple zero eigenvalue
    assert np.allclose(mp.laplacian_sym, mp.laplacian_sym.T)


def test_time_zero_and_limit(rng):
    mp = markov_process(random_connected_weights(rng, 12))
    assert np.allclose(transition_matrix(mp, 0.0), np.eye(12), atol=1e-12)
    p_inf = transition_matrix(mp, 1e6)
    assert np.abs(p_inf - mp.pi[None, :]).max() < 1e-6


@pytest.mark.parametrize("n", [3, 8, 20])
@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_against_exponential_oracles(rng, n, t):
    w = random_connected_weights(rng, n, p=0.3)
    mp = markov_process(w)
    p = transition_matrix(mp, t)
    lrw = random_walk_matrix(w)
    assert np.abs(p - expm_taylor_squaring(-t * lrw)).max() < 1e-8
    assert np.abs(p - scipy.linalg.expm(-t * lrw)).max() < 1e-8
    assert np.abs(p.sum(axis=1) - 1).max() < 1e-8
    assert np.abs(mp.pi @ p - mp.pi).max() < 1e-8


def test_semigroup(rng):
    mp = markov_process(random_connected_weights(rng, 50, p=0.08))
    for s, t in rng.uniform(0.01, 20, (5, 2)):
        lhs = transition_matrix(mp, s) @ transition_matrix(mp, t)
        assert np.abs(lhs - transition_matrix(mp, s + t)).max() < 1e-7


def test_autocovariance_symmetric(rng):
    mp = markov_process(random_connected_weights(rng, 15))
    b = autocovariance(mp, 0.7)
    assert np.array_equal(b, b.T)
    assert abs(b.sum()) < 1e-12


def test_score_special_partitions(rng):
    mp = markov_process(random_connected_weights(rng, 15))
    assert stability_score(mp, 0.0, np.arange(15)) == pytest.approx(1 - (mp.pi**2).sum(), abs=1e-10)
    for t in [0.0, 0.5, 5.0, 500.0]:
        assert abs(stability_score(mp, t, np.zeros(15, dtype=int))) < 1e-12
    h = rng.integers(0, 4, 15)
    assert abs(stability_score(mp, 1e6, h)) < 1e-6


def test_score_label_invariance(rng):
    mp = markov_process(random_connected_weights(rng, 10))
    a = np.array([0, 0, 1, 1, 2, 2, 0, 1, 2, 2])
    relabel = np.array([2, 0, 1])[a]
    assert stability_score(mp, 1.3, a) == pytest.approx(stability_score(mp, 1.3, relabel), abs=1e-15)


def test_node_permutation_invariance(rng):
    w = random_connected_weights(rng, 10)
    perm = rng.permutation(10)
    a = rng.integers(0, 3, 10)
    s1 = stability_score(markov_process(w), 2.0, a)
    s2 = stability_score(markov_process(w[np.ix_(perm, perm)]), 2.0, a[perm])
    assert s1 == pytest.approx(s2, abs=1e-13)


def test_errors():
    with pytest.raises(ValueError, match="disconnected"):
        markov_process(np.kron(np.eye(2), np.ones((2, 2)) - np.eye(2)))
    with pytest.raises(ValueError, match="zero degree"):
        markov_process(np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=float))
    with pytest.raises(ValueError, match="negative"):
        markov_process(np.array([[0, -1], [-1, 0]], dtype=float))
    with pytest.raises(ValueError, match="symmetric"):
        markov_process(np.array([[0, 1], [2, 0]], dtype=float))
    mp = markov_process(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        transition_matrix(mp, -1.0)


def test_weighted_network_uses_similarity():
    from rolecomm import build_rmst

    y = np.array([[1.0, 0.9, 0.1], [0.9, 1.0, 0.2], [0.1, 0.2, 1.0]])
    net = build_rmst(y, 0.5)
    assert np.allclose(markov_process(net, weighted=True).degree, [1.0, 1.1, 0.3])
    assert np.allclose(markov_process(net).degree, [2, 2, 2])
