"""Relaxed Minimum Spanning Tree sparsification of a similarity matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigError


@dataclass(frozen=True, eq=False)
class RmstNetwork:
    """Undirected similarity network.

    Attributes
    ----------
    adjacency : (N, N) bool array
        Symmetric, zero diagonal.
    similarity : (N, N) float array
        The similarity matrix the network was built from; edge weights of
        the weighted variant are ``adjacency * similarity``.
    gamma : float
    mst_edges : (N-1, 2) int array
        Spanning tree edges as ``(i, j)`` with ``i < j``.
    """

    adjacency: np.ndarray
    similarity: np.ndarray
    gamma: float
    mst_edges: np.ndarray

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.adjacency, 1)))

    def edge_list(self) -> np.ndarray:
        """Undirected edges ``(i, j)``, ``i < j``, in row-major order."""
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return np.column_stack((i, j))

    def weights(self, weighted: bool = False) -> np.ndarray:
        """Edge-weight matrix: ``E`` or the Hadamard product ``E * Y``."""
        if weighted:
            return np.where(self.adjacency, self.similarity, 0.0)
        return self.adjacency.astype(np.float64)


def dissimilarity(y: np.ndarray) -> np.ndarray:
    z = 1.0 - np.asarray(y, dtype=np.float64)
    np.clip(z, 0.0, 1.0, out=z)
    np.fill_diagonal(z, 0.0)
    return z


def minimum_spanning_tree(z: np.ndarray) -> np.ndarray:
    """Minimum spanning tree of the complete graph weighted by ``z``.

    Dense Prim, O(N^2). Equal weights are ordered by the edge ``(i, j)``
    with ``i < j`` lexicographically, so the tree is unique. Returns an
    ``(N-1, 2)`` array of ``(i, j)`` pairs with ``i < j``.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ValueError("z must be square")
    if z.shape[0] < 2:
        raise ValueError("a spanning tree needs at least two nodes")
    return kernels.prim_mst(z)


def mlink_all_pairs(tree: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Largest ``z`` weight on the tree path between every pair of nodes.

    Tree edges are merged in ascending ``(weight, i, j)`` order with a
    union-find; at each merge the edge weight is the answer for every pair
    across the two components.

    Raises
    ------
    ValueError
        If ``tree`` is not a spanning tree on ``z``'s nodes.
    """
    z = np.asarray(z, dtype=np.float64)
    n = z.shape[0]
    tree = np.asarray(tree, dtype=np.int64).reshape(-1, 2)
    if tree.shape[0] != n - 1:
        raise ValueError(f"a spanning tree on {n} nodes has {n - 1} edges, got {tree.shape[0]}")
    if tree.size and (tree.min() < 0 or tree.max() >= n):
        raise ValueError("tree edge endpoint out of range")
    lo = tree.min(axis=1)
    hi = tree.max(axis=1)
    w = z[lo, hi]
    order = np.lexsort((hi, lo, w))
    mlink, ok = kernels.mlink_union_find(n, lo[order], hi[order], w[order])
    if not ok:
        raise ValueError("edge list contains a cycle; not a tree")
    return mlink


def local_scale(z: np.ndarray) -> np.ndarray:
    """Distance from each node to its nearest other node."""
    z = np.array(z, dtype=np.float64)
    if z.shape[0] < 2:
        raise ValueError("local scale needs at least two nodes")
    np.fill_diagonal(z, np.inf)
    return z.min(axis=1)


def relax(z, tree, mlink, d, gamma: float = 0.5, y=None) -> RmstNetwork:
    """Add to the tree every pair with ``mlink + gamma (d_i + d_j) > z``."""
    if gamma < 0:
        raise ConfigError(f"gamma must be nonnegative, got {gamma}")
    z = np.asarray(z, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    tree = np.asarray(tree, dtype=np.int64).reshape(-1, 2)
    keep = mlink + gamma * (d[:, None] + d[None, :]) > z
    keep |= keep.T  # tolerate a z with asymmetric rounding
    keep[tree[:, 0], tree[:, 1]] = True
    keep[tree[:, 1], tree[:, 0]] = True
    np.fill_diagonal(keep, False)
    y = 1.0 - z if y is None else np.asarray(y, dtype=np.float64)
    mst = np.sort(tree, axis=1)
    return RmstNetwork(adjacency=keep, similarity=y, gamma=float(gamma), mst_edges=mst)


def build_rmst(y: np.ndarray, gamma: float = 0.5) -> RmstNetwork:
    """Full RMST construction from a similarity matrix."""
    if gamma < 0:
        raise ConfigError(f"gamma must be nonnegative, got {gamma}")
    z = dissimilarity(y)
    tree = minimum_spanning_tree(z)
    mlink = mlink_all_pairs(tree, z)
    d = local_scale(z)
    return relax(z, tree, mlink, d, gamma, y=np.asarray(y, dtype=np.float64))
