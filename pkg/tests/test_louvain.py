import numpy as np
import pytest

from rolecomm import Partition, louvain_optimize, markov_process
from rolecomm.louvain import aggregate, partition_quality
from rolecomm.stability import autocovariance

from conftest import random_connected_weights
from oracles import exhaustive_max_quality


def two_cliques(k, bridge=False):
    n = 2 * k
    w = np.zeros((n, n))
    w[:k, :k] = 1.0
    w[k:, k:] = 1.0
    np.fill_diagonal(w, 0.0)
    if bridge:
        w[k - 1, k] = w[k, k - 1] = 1.0
    return w


def block_autocov(w, t):
    """Autocovariance for a possibly disconnected net, built blockwise from degrees."""
    k = w.sum(axis=1)
    lrw = np.eye(len(k)) - w / k[:, None]
    import scipy.linalg

    p = scipy.linalg.expm(-t * lrw)
    pi = k / k.sum()
    flow = pi[:, None] * p
    return (flow + flow.T) / 2 - np.outer(pi, pi)


def test_disconnected_cliques_match_exhaustive():
    b = block_autocov(two_cliques(4), 1.0)
    best_q, best = exhaustive_max_quality(b)
    part, q = louvain_optimize(b, 0)
    assert q == pytest.approx(best_q, abs=1e-12)
    assert part == Partition.from_labels([0] * 4 + [1] * 4)


def test_long_time_limit_gives_one_community(rng):
    # B(t) -> Pi 1 pi^T - pi pi^T = 0: every partition scores 0 and nodes coalesce
    mp = markov_process(random_connected_weights(rng, 12))
    b = autocovariance(mp, 1e6)
    part, q = louvain_optimize(b, 3, min_gain=1e-12 * mp.pi.max())
    assert part.c == 1
    assert abs(q) < 1e-12


def test_pure_rank_one_term_matches_exhaustive(rng):
    # b = -pi pi^T on its own: splitting only reduces the penalty
    pi = rng.random(8)
    pi /= pi.sum()
    b = -np.outer(pi, pi)
    best_q, _ = exhaustive_max_quality(b)
    part, q = louvain_optimize(b, 3)
    assert part.c == 8
    assert q == pytest.approx(best_q, abs=1e-15)


def test_exact_zero_matrix_is_one_community():
    part, q = louvain_optimize(np.zeros((5, 5)), 0)
    assert part.c == 1 and q == 0.0


def test_deterministic_given_seed(rng):
    b = autocovariance(markov_process(random_connected_weights(rng, 40, p=0.1)), 2.0)
    p1, q1 = louvain_optimize(b, np.random.SeedSequence(7))
    p2, q2 = louvain_optimize(b, np.random.SeedSequence(7))
    assert p1 == p2 and q1 == q2


def test_quality_is_evaluated_on_input(rng):
    b = autocovariance(markov_process(random_connected_weights(rng, 20)), 0.8)
    part, q = louvain_optimize(b, 1)
    assert q == partition_quality(b, part.assignment)


def test_aggregate_preserves_quality(rng):
    w = random_connected_weights(rng, 12)
    b = autocovariance(markov_process(w), 1.0)
    labels = np.array([0, 0, 1, 1, 2, 2, 0, 1, 2, 3, 3, 3])
    agg = aggregate(b, labels, 4)
    assert np.trace(agg) == pytest.approx(partition_quality(b, labels), abs=1e-14)
    assert np.array_equal(agg, agg.T)


@pytest.mark.parametrize("t", [0.2, 1.0, 5.0])
def test_never_beats_exhaustive(rng, t):
    for _ in range(5):
        b = autocovariance(markov_process(random_connected_weights(rng, 8, p=0.3)), t)
        best_q, _ = exhaustive_max_quality(b)
        for s in range(10):
            _, q = louvain_optimize(b, s)
            assert q <= best_q + 1e-12


def test_single_node():
    part, q = louvain_optimize(np.array([[0.5]]), 0)
    assert part.c == 1 and q == 0.5
