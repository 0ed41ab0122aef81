"""Normalised Variation of Information between hard partitions."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .partition import canonical_labels


def _labels(p) -> np.ndarray:
    return np.asarray(getattr(p, "assignment", p), dtype=np.int64)


def _entropy(counts: np.ndarray, n: int) -> float:
    # sorted so the sum does not depend on label order (keeps VI exactly symmetric)
    p = np.sort(counts[counts > 0]) / n
    return float(-(p * np.log(p)).sum())


def variation_of_information(p1, p2, n: int | None = None) -> float:
    """``(2 H(p1, p2) - H(p1) - H(p2)) / log N`` with natural logarithms.

    Accepts ``Partition`` objects or plain label arrays; labels need not be
    contiguous.
    """
    a = _labels(p1)
    b = _labels(p2)
    if n is None:
        n = a.size
    if a.size != n or b.size != n:
        raise ValueError("partitions must both cover n nodes")
    if n < 2:
        raise ValueError("VI is normalised by log N and needs N >= 2")
    _, a = np.unique(a, return_inverse=True)
    _, b = np.unique(b, return_inverse=True)
    ca = np.bincount(a)
    cb = np.bincount(b)
    joint = np.bincount(a * cb.size + b)
    vi = 2.0 * _entropy(joint, n) - (_entropy(ca, n) + _entropy(cb, n))
    return float(min(max(vi / np.log(n), 0.0), 1.0))


def mean_pairwise_vi(partitions, n: int | None = None) -> float:
    """Mean VI over all unordered pairs of an ensemble.

    Identical partitions are grouped first so that only distinct pairs are
    evaluated.
    """
    labels = [_labels(p) for p in partitions]
    if len(labels) < 2:
        raise ValueError("mean pairwise VI needs at least two partitions")
    if n is None:
        n = labels[0].size
    canon: dict[bytes, int] = {}
    reps: list[np.ndarray] = []
    counts: list[int] = []
    for lab in labels:
        key = canonical_labels(lab).tobytes()
        if key in canon:
            counts[canon[key]] += 1
        else:
            canon[key] = len(reps)
            reps.append(lab)
            counts.append(1)
    total = 0.0
    for (i, a), (j, b) in combinations(enumerate(reps), 2):
        total += counts[i] * counts[j] * variation_of_information(a, b, n)
    m = len(labels)
    return total / (m * (m - 1) / 2)

