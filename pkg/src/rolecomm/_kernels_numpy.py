"""Pure-numpy kernels (vectorised inner steps). Reference path when numba is off."""

import numpy as np


def prim_mst(z):
    """Dense Prim under the total edge order ``(weight, min(i, j), max(i, j))``."""
    n = z.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    key_w = z[0].astype(np.float64).copy()
    key_a = np.zeros(n, dtype=np.int64)  # smaller endpoint of candidate edge
    key_b = np.arange(n, dtype=np.int64)  # larger endpoint
    edges = np.empty((n - 1, 2), dtype=np.int64)
    idx = np.arange(n)
    for step in range(n - 1):
        cand = np.flatnonzero(~in_tree)
        w = key_w[cand]
        tied = cand[w == w.min()]
        if tied.size > 1:
            order = np.lexsort((key_b[tied], key_a[tied]))
            v = tied[order[0]]
        else:
            v = tied[0]
        edges[step] = key_a[v], key_b[v]
        in_tree[v] = True
        new_w = z[v]
        new_a = np.minimum(idx, v)
        new_b = np.maximum(idx, v)
        better = (new_w < key_w) | (
            (new_w == key_w) & ((new_a < key_a) | ((new_a == key_a) & (new_b < key_b)))
        )
        better &= ~in_tree
        key_w[better] = new_w[better]
        key_a[better] = new_a[better]
        key_b[better] = new_b[better]
    return edges


def mlink_union_find(n, eu, ev, ew):
    """All-pairs minimax path weight from tree edges given in ascending order.

    Returns ``(mlink, ok)``; ``ok`` is False when an edge closes a cycle.
    """
    mlink = np.zeros((n, n), dtype=np.float64)
    comp = np.arange(n)
    members = [np.array([i]) for i in range(n)]
    for u, v, w in zip(eu, ev, ew):
        cu, cv = comp[u], comp[v]
        if cu == cv:
            return mlink, False
        a, b = members[cu], members[cv]
        mlink[np.ix_(a, b)] = w
        mlink[np.ix_(b, a)] = w
        if a.size < b.size:
            cu, cv, a, b = cv, cu, b, a
        comp[b] = cu
        members[cu] = np.concatenate((a, b))
        members[cv] = None
    return mlink, True


# fraction of min_gain a lone node may lose by joining a community
MERGE_SLACK = 0.25


def louvain_local_moves(b, order, min_gain):
    """One Louvain level: greedy node moves on the dense quality matrix ``b``.

    Starts from singletons. ``k[i, c]`` tracks ``sum_{j in c} b[i, j]``.
    Moving ``u`` from ``a`` to ``c`` changes the quality by
    ``2 (k[u, c] - k[u, a] + b[u, u])``; empty columns give the isolation move.
    A node alone in its community also joins the best nonempty community
    when that costs less than ``MERGE_SLACK * min_gain``, so indifferent
    nodes coalesce instead of staying singletons.
    """
    n = b.shape[0]
    comm = np.arange(n, dtype=np.int64)
    k = b.copy()
    diag = np.diag(b).copy()
    size = np.ones(n, dtype=np.int64)
    merge_floor = -MERGE_SLACK * min_gain
    total_moves = 0
    for _sweep in range(1000):
        moved = 0
        for u in order:
            a = comm[u]
            gain = k[u] - k[u, a] + diag[u]
            gain[a] = 0.0
            c = int(np.argmax(gain))
            if not 2.0 * gain[c] > min_gain:
                if size[a] != 1:
                    continue
                gain = np.where(size > 0, gain, -np.inf)
                gain[a] = -np.inf
                c = int(np.argmax(gain))
                if not 2.0 * gain[c] >= merge_floor:
                    continue
            col = b[:, u]
            k[:, a] -= col
            k[:, c] += col
            size[a] -= 1
            size[c] += 1
            comm[u] = c
            moved += 1
        total_moves += moved
        if moved == 0:
            break
    return comm, total_moves
