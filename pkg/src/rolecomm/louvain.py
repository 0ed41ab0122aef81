"""Louvain optimisation of a generalised quality ``trace(H^T B H)`` on a dense matrix."""

from __future__ import annotations

import numpy as np

from . import kernels
from .partition import Partition, canonical_labels

# relative to max |b|; moves with smaller gain are treated as no-ops
GAIN_TOLERANCE = 1e-12


def partition_quality(b: np.ndarray, assignment: np.ndarray) -> float:
    """``sum_{i,j} b[i, j] [c_i == c_j]``."""
    assignment = np.asarray(assignment, dtype=np.int64)
    c = int(assignment.max()) + 1
    h = np.zeros((assignment.size, c))
    h[np.arange(assignment.size), assignment] = 1.0
    return float(np.einsum("ic,ic->", b @ h, h))


def aggregate(b: np.ndarray, labels: np.ndarray, c: int) -> np.ndarray:
    """Sum ``b`` over community blocks: ``H^T b H``, exactly symmetric."""
    h = np.zeros((labels.size, c))
    h[np.arange(labels.size), labels] = 1.0
    agg = h.T @ b @ h
    return (agg + agg.T) / 2.0


def louvain_optimize(b: np.ndarray, seed, min_gain: float | None = None) -> tuple[Partition, float]:
    """Maximise ``trace(H^T b H)`` over hard partitions.

    Each level sweeps the (super-)nodes in a random order drawn from
    ``seed`` and moves each one to the community with the largest positive
    gain, repeating until no move helps; communities are then collapsed
    into super-nodes and the next level starts. Stops when a level makes no
    move.

    Parameters
    ----------
    b : (N, N) array
        Symmetric quality matrix.
    seed : int or numpy.random.SeedSequence
    min_gain : float, optional
        Smallest quality increase that counts as an improvement. Defaults
        to ``GAIN_TOLERANCE * max|b|``.

    Returns
    -------
    partition : Partition
        Communities labelled in order of first appearance.
    quality : float
        ``trace(H^T b H)`` of the returned partition, evaluated on ``b``.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.shape[0]
    if b.shape != (n, n):
        raise ValueError("b must be square")
    rng = np.random.default_rng(seed)
    if min_gain is None:
        min_gain = GAIN_TOLERANCE * (float(np.abs(b).max()) if n else 0.0)
    membership = np.arange(n, dtype=np.int64)
    level_b = (b + b.T) / 2.0
    while True:
        m = level_b.shape[0]
        order = rng.permutation(m)
        comm, moves = kernels.louvain_local_moves(level_b, order, min_gain)
        if moves == 0:
            break
        labels = canonical_labels(comm)
        c = int(labels.max()) + 1
        membership = labels[membership]
        if c == m or c == 1:
            break
        level_b = aggregate(level_b, labels, c)
    membership = canonical_labels(membership)
    return Partition(membership), partition_quality(b, membership)
