#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 100 300 1000] [--repeat 5]

Each kernel runs on the same inputs in both backends; outputs are checked
for equality before timing. Numba compile time is excluded (one warm-up
call per size).
"""

import argparse
import time

import numpy as np

from rolecomm import _kernels_numba as knb
from rolecomm import _kernels_numpy as knp
from rolecomm.stability import autocovariance, markov_process


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def inputs(n, rng):
    z = rng.random((n, n))
    z = np.triu(z, 1)
    z = z + z.T
    tree = knp.prim_mst(z)
    w = z[tree[:, 0], tree[:, 1]]
    order = np.lexsort((tree[:, 1], tree[:, 0], w))
    mlink_args = (n, tree[order, 0].copy(), tree[order, 1].copy(), w[order].copy())
    # sparse connected graph: ring plus random chords
    adj = np.zeros((n, n))
    idx = np.arange(n)
    adj[idx, (idx + 1) % n] = 1
    chords = rng.random((n, n)) < 4.0 / n
    adj = np.maximum(adj, chords)
    adj = np.maximum(adj, adj.T)
    np.fill_diagonal(adj, 0)
    b = autocovariance(markov_process(adj), 1.0)
    return z, mlink_args, b, rng.permutation(n)


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--sizes", type=int, nargs="+", default=[100, 300, 1000])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'kernel':<22}{'N':>6}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for n in args.sizes:
        z, mlink_args, b, order = inputs(n, rng)
        min_gain = 1e-12 * np.abs(b).max()
        cases = {
            "prim_mst": (lambda m: m.prim_mst(z)),
            "mlink_union_find": (lambda m: m.mlink_union_find(*mlink_args)),
            "louvain_local_moves": (lambda m: m.louvain_local_moves(b, order, min_gain)),
        }
        for name, call in cases.items():
            ref, got = call(knp), call(knb)  # also warms up the jit
            ref = ref if isinstance(ref, tuple) else (ref,)
            got = got if isinstance(got, tuple) else (got,)
            assert all(np.array_equal(x, y) for x, y in zip(ref, got)), f"{name}: backends disagree"
            t_np = best_of(lambda: call(knp), args.repeat)
            t_nb = best_of(lambda: call(knb), args.repeat)
            print(f"{name:<22}{n:>6}{1e3 * t_np:>14.2f}{1e3 * t_nb:>14.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
