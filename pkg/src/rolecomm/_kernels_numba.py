"""numba-compiled loop kernels. Same contracts and results as ``_kernels_numpy``."""

import numpy as np
from numba import njit

from ._accel import NUMBA_OPTS
from ._kernels_numpy import MERGE_SLACK


@njit(**NUMBA_OPTS)
def _edge_less(w1, a1, b1, w2, a2, b2):
    if w1 != w2:
        return w1 < w2
    if a1 != a2:
        return a1 < a2
    return b1 < b2


@njit(**NUMBA_OPTS)
def prim_mst(z):
    n = z.shape[0]
    in_tree = np.zeros(n, dtype=np.bool_)
    in_tree[0] = True
    key_w = np.empty(n, dtype=np.float64)
    key_a = np.zeros(n, dtype=np.int64)
    key_b = np.empty(n, dtype=np.int64)
    for v in range(n):
        key_w[v] = z[0, v]
        key_b[v] = v
    edges = np.empty((n - 1, 2), dtype=np.int64)
    for step in range(n - 1):
        best = -1
        for v in range(n):
            if in_tree[v]:
                continue
            if best < 0 or _edge_less(key_w[v], key_a[v], key_b[v], key_w[best], key_a[best], key_b[best]):
                best = v
        edges[step, 0] = key_a[best]
        edges[step, 1] = key_b[best]
        in_tree[best] = True
        for v in range(n):
            if in_tree[v]:
                continue
            a = min(v, best)
            b = max(v, best)
            if _edge_less(z[best, v], a, b, key_w[v], key_a[v], key_b[v]):
                key_w[v] = z[best, v]
                key_a[v] = a
                key_b[v] = b
    return edges


@njit(**NUMBA_OPTS)
def mlink_union_find(n, eu, ev, ew):
    mlink = np.zeros((n, n), dtype=np.float64)
    comp = np.arange(n)
    # singly linked member lists per component root
    head = np.arange(n)
    tail = np.arange(n)
    nxt = np.full(n, -1, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    for e in range(eu.shape[0]):
        cu = comp[eu[e]]
        cv = comp[ev[e]]
        if cu == cv:
            return mlink, False
        w = ew[e]
        i = head[cu]
        while i >= 0:
            j = head[cv]
            while j >= 0:
                mlink[i, j] = w
                mlink[j, i] = w
                j = nxt[j]
            i = nxt[i]
        if size[cu] < size[cv]:
            cu, cv = cv, cu
        j = head[cv]
        while j >= 0:
            comp[j] = cu
            j = nxt[j]
        nxt[tail[cu]] = head[cv]
        tail[cu] = tail[cv]
        size[cu] += size[cv]
    return mlink, True


@njit(**NUMBA_OPTS)
def louvain_local_moves(b, order, min_gain):
    n = b.shape[0]
    comm = np.arange(n)
    k = b.copy()
    size = np.ones(n, dtype=np.int64)
    merge_floor = -MERGE_SLACK * min_gain
    total_moves = 0
    for _sweep in range(1000):
        moved = 0
        for idx in range(order.shape[0]):
            u = order[idx]
            a = comm[u]
            base = k[u, a]
            d = b[u, u]
            best_c = 0
            best_g = -np.inf
            for c in range(n):
                if c == a:
                    g = 0.0
                else:
                    g = k[u, c] - base + d
                if g > best_g:
                    best_g = g
                    best_c = c
            if not 2.0 * best_g > min_gain:
                if size[a] != 1:
                    continue
                # lone node: join the best nonempty community if nearly free
                best_c = a
                best_g = -np.inf
                for c in range(n):
                    if c != a and size[c] > 0:
                        g = k[u, c] - base + d
                        if g > best_g:
                            best_g = g
                            best_c = c
                if best_c == a or not 2.0 * best_g >= merge_floor:
                    continue
            for i in range(n):
                col = b[u, i]  # b is symmetric; row access is contiguous
                k[i, a] -= col
                k[i, best_c] += col
            size[a] -= 1
            size[best_c] += 1
            comm[u] = best_c
            moved += 1
        total_moves += moved
        if moved == 0:
            break
    return comm, total_moves
