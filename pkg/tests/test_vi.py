import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rolecomm import Partition, mean_pairwise_vi, variation_of_information

from oracles import vi_from_sets


def test_relabelled_identical_is_zero():
    assert variation_of_information([0, 0, 1, 1, 2], [5, 5, 3, 3, 9]) == 0.0


def test_singletons_vs_all_is_one():
    n = 7
    assert variation_of_information(list(range(n)), [0] * n) == pytest.approx(1.0, abs=1e-15)


def test_crossing_example():
    # {01|23} vs {02|13}: four cells of 1/4 -> (2 log 4 - 2 log 2) / log 4
    v = variation_of_information([0, 0, 1, 1], [0, 1, 0, 1])
    assert v == pytest.approx((2 * math.log(4) - 2 * math.log(2)) / math.log(4))
    assert v == pytest.approx(1.0)


def test_accepts_partition_objects():
    p = Partition.from_labels([3, 3, 1])
    assert variation_of_information(p, Partition.from_labels([0, 0, 1])) == 0.0


def test_needs_two_nodes():
    with pytest.raises(ValueError):
        variation_of_information([0], [0])
    with pytest.raises(ValueError):
        variation_of_information([0, 1], [0, 1, 2])


def test_mean_pairwise():
    a = [0, 0, 1, 1]
    b = [0, 1, 2, 3]
    c = [0, 0, 0, 0]
    assert mean_pairwise_vi([a, a, a]) == 0.0
    assert mean_pairwise_vi([b, c]) == pytest.approx(1.0)
    # pairs: (a,a)=0, (a,c), (a,c) -> 2 VI(a,c) / 3
    expected = 2 * vi_from_sets(a, c) / 3
    assert mean_pairwise_vi([a, a, c]) == pytest.approx(expected)
    with pytest.raises(ValueError):
        mean_pairwise_vi([a])


def test_mean_pairwise_matches_naive(rng):
    parts = [rng.integers(0, 3, 12) for _ in range(6)] + [np.array([0] * 12)] * 3
    naive = [variation_of_information(parts[i], parts[j]) for i in range(9) for j in range(i + 1, 9)]
    assert mean_pairwise_vi(parts) == pytest.approx(np.mean(naive), abs=1e-14)


labels = st.lists(st.integers(0, 4), min_size=2, max_size=25)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 25).flatmap(lambda n: st.tuples(*[st.lists(st.integers(0, 4), min_size=n, max_size=n)] * 3)))
def test_metric_axioms(triple):
    a, b, c = triple
    ab = variation_of_information(a, b)
    assert ab == pytest.approx(vi_from_sets(a, b), abs=1e-12)
    assert ab == pytest.approx(variation_of_information(b, a), abs=1e-15)
    assert 0.0 <= ab <= 1.0
    assert variation_of_information(a, c) <= ab + variation_of_information(b, c) + 1e-12
    same = Partition.from_labels(a) == Partition.from_labels(b)
    assert (ab < 1e-12) == same
