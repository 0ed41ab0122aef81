"""Markov Stability of partitions of an undirected network, scanned over Markov time."""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .louvain import GAIN_TOLERANCE, louvain_optimize
from .partition import Partition
from .vi import mean_pairwise_vi, variation_of_information

logger = logging.getLogger(__name__)

# gains below this multiple of max(pi) are at the rounding level of Pi P(t) - pi pi^T
NOISE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class MarkovProcess:
    """Continuous-time random walk ``P(t) = exp(-t (I - D^-1 E))``.

    The symmetric normalised Laplacian ``I - D^-1/2 E D^-1/2`` is
    diagonalised once; every ``P(t)`` is assembled from that.
    """

    n: int
    degree: np.ndarray
    pi: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def laplacian_sym(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def _is_connected(w: np.ndarray) -> bool:
    n = w.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    nbrs = [np.flatnonzero(row) for row in w != 0]
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return bool(seen.all())


def markov_process(net, weighted: bool = False) -> MarkovProcess:
    """Build the random walk on an RMST network (or a symmetric weight matrix).

    Raises
    ------
    ValueError
        If the network is disconnected, has a zero-degree node, or has
        negative or asymmetric weights.
    """
    if hasattr(net, "weights"):
        w = net.weights(weighted)
    else:
        w = np.asarray(net, dtype=np.float64)
    n = w.shape[0]
    if w.shape != (n, n) or n == 0:
        raise ValueError("weight matrix must be square and nonempty")
    if (w < 0).any():
        raise ValueError("negative edge weights")
    if not np.array_equal(w, w.T):
        raise ValueError("weight matrix must be symmetric")
    k = w.sum(axis=1)
    if (k <= 0).any():
        raise ValueError(f"node {int(np.flatnonzero(k <= 0)[0])} has zero degree")
    if not _is_connected(w):
        raise ValueError("network is disconnected")
    s = 1.0 / np.sqrt(k)
    lsym = np.eye(n) - s[:, None] * w * s[None, :]
    lsym = (lsym + lsym.T) / 2.0
    lam, v = np.linalg.eigh(lsym)
    # the null vector is known exactly; pinning it keeps exp(-t lam_0) = 1 at large t
    lam[0] = 0.0
    v[:, 0] = np.sqrt(k / k.sum())
    np.clip(lam, 0.0, 2.0, out=lam)
    return MarkovProcess(n=n, degree=k, pi=k / k.sum(), eigenvalues=lam, eigenvectors=v)


def _heat_kernel(mp: MarkovProcess, t: float) -> np.ndarray:
    """``exp(-t L_sym)``."""
    v = mp.eigenvectors
    return (v * np.exp(-t * mp.eigenvalues)) @ v.T


def transition_matrix(mp: MarkovProcess, t: float) -> np.ndarray:
    if t < 0:
        raise ValueError(f"Markov time must be nonnegative, got {t}")
    root = np.sqrt(mp.degree)
    return _heat_kernel(mp, t) * (root[None, :] / root[:, None])


def autocovariance(mp: MarkovProcess, t: float) -> np.ndarray:
    """Symmetrised clustered-autocovariance matrix ``Pi P(t) - pi pi^T``.

    ``Pi P(t) = D^1/2 exp(-t L_sym) D^1/2 / sum(k)``, symmetric in exact
    arithmetic.
    """
    if t < 0:
        raise ValueError(f"Markov time must be nonnegative, got {t}")
    root = np.sqrt(mp.degree)
    flow = _heat_kernel(mp, t) * np.outer(root, root) / mp.degree.sum()
    flow = (flow + flow.T) / 2.0
    return flow - np.outer(mp.pi, mp.pi)


def stability_score(mp: MarkovProcess, t: float, p) -> float:
    """``trace(H^T [Pi P(t) - pi pi^T] H)``."""
    a = np.asarray(getattr(p, "assignment", p), dtype=np.int64)
    b = autocovariance(mp, t)
    return _score(b, a)


def _score(b: np.ndarray, a: np.ndarray) -> float:
    c = int(a.max()) + 1
    h = np.zeros((a.size, c))
    h[np.arange(a.size), a] = 1.0
    return float(np.einsum("ic,ic->", b @ h, h))


@dataclass(frozen=True, eq=False)
class ScanResult:
    t: float
    best_partition: Partition
    best_stability: float
    mean_vi: float
    stabilities: np.ndarray

    @property
    def n_communities(self) -> int:
        return self.best_partition.c


def default_times(t_min: float = 0.1, t_max: float = 1000.0, n_times: int = 100) -> np.ndarray:
    return np.logspace(np.log10(t_min), np.log10(t_max), n_times)


def run_seed(seed: int, time_index: int, run_index: int) -> np.random.SeedSequence:
    """Seed for one Louvain run; depends only on the three integers."""
    return np.random.SeedSequence(entropy=int(seed), spawn_key=(int(time_index), int(run_index)))


def _pick_best(partitions: list[Partition], qualities: np.ndarray) -> int:
    best = 0
    for i in range(1, len(partitions)):
        qi, qb = qualities[i], qualities[best]
        if qi > qb:
            best = i
        elif qi == qb:
            pi, pb = partitions[i], partitions[best]
            if (pi.c, pi.assignment.tolist()) < (pb.c, pb.assignment.tolist()):
                best = i
    return best


def time_scan(
    mp: MarkovProcess,
    times,
    runs: int = 100,
    seed: int = 0,
    threads: int | None = 1,
    progress=None,
) -> list[ScanResult]:
    """Optimise Markov Stability at each time with an ensemble of Louvain runs.

    Louvain runs for time index ``ti`` and run ``ri`` are seeded with
    ``run_seed(seed, ti, ri)``, so the result does not depend on
    ``threads``.
    """
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a nonempty 1-d sequence")
    if (times < 0).any() or (np.diff(times) < 0).any():
        raise ValueError("times must be nonnegative and sorted ascending")
    if runs < 2:
        raise ValueError("need at least two Louvain runs per time")
    results = []
    pool = ThreadPoolExecutor(max_workers=threads) if threads and threads > 1 else None
    try:
        for ti, t in enumerate(times):
            b = autocovariance(mp, float(t))
            min_gain = max(GAIN_TOLERANCE * float(np.abs(b).max()), NOISE_FLOOR * float(mp.pi.max()))
            seeds = [run_seed(seed, ti, ri) for ri in range(runs)]
            if pool is None:
                out = [louvain_optimize(b, s, min_gain) for s in seeds]
            else:
                out = list(pool.map(lambda s: louvain_optimize(b, s, min_gain), seeds))
            parts = [p for p, _ in out]
            quals = np.array([q for _, q in out])
            best = _pick_best(parts, quals)
            res = ScanResult(
                t=float(t),
                best_partition=parts[best],
                best_stability=float(quals[best]),
                mean_vi=mean_pairwise_vi(parts, mp.n),
                stabilities=quals,
            )
            results.append(res)
            logger.debug("t=%.4g communities=%d r=%.6g vi=%.4f", t, res.n_communities, res.best_stability, res.mean_vi)
            if progress is not None:
                progress(ti, res)
    finally:
        if pool is not None:
            pool.shutdown()
    return results


def consecutive_vi(scan: list[ScanResult]) -> list[float | None]:
    """VI between best partitions of neighbouring grid points (last entry None)."""
    out: list[float | None] = []
    for a, b in zip(scan, scan[1:]):
        out.append(variation_of_information(a.best_partition, b.best_partition))
    if scan:
        out.append(None)
    return out


@dataclass(frozen=True, eq=False)
class RobustScale:
    t: float
    time_index: int
    partition: Partition
    stability: float
    mean_vi: float
    plateau_start: int
    plateau_end: int  # inclusive

    @property
    def n_communities(self) -> int:
        return self.partition.c

    @property
    def plateau_length(self) -> int:
        return self.plateau_end - self.plateau_start + 1


def _segments(counts: list[int]) -> list[tuple[int, int]]:
    segs = []
    start = 0
    for i in range(1, len(counts) + 1):
        if i == len(counts) or counts[i] != counts[start]:
            segs.append((start, i - 1))
            start = i
    return segs


def select_robust(scan: list[ScanResult], vi_threshold: float = 0.05, min_plateau: int = 3) -> list[RobustScale]:
    """Pick robust Markov times from a scan.

    Candidates are (a) runs of at least ``min_plateau`` consecutive grid
    points whose best partitions have the same number of communities, and
    (b) local minima of the mean VI below ``vi_threshold``; a dip is merged
    into the constant-count run that contains it. Each candidate is
    represented by its grid point of lowest mean VI (earliest on ties).
    Ranked by run length, then mean VI, then time.
    """
    if not scan:
        return []
    counts = [r.n_communities for r in scan]
    vi = np.array([r.mean_vi for r in scan])
    m = len(scan)
    dips = set()
    for i in range(m):
        left = vi[i - 1] if i > 0 else np.inf
        right = vi[i + 1] if i < m - 1 else np.inf
        if vi[i] < vi_threshold and vi[i] <= left and vi[i] <= right:
            dips.add(i)
    picked = []
    for start, end in _segments(counts):
        length = end - start + 1
        has_dip = any(start <= i <= end for i in dips)
        if length < min_plateau and not has_dip:
            continue
        idx = range(start, end + 1)
        rep = min(idx, key=lambda i: (vi[i], i))
        r = scan[rep]
        picked.append(
            RobustScale(
                t=r.t,
                time_index=rep,
                partition=r.best_partition,
                stability=r.best_stability,
                mean_vi=r.mean_vi,
                plateau_start=start,
                plateau_end=end,
            )
        )
    picked.sort(key=lambda s: (-s.plateau_length, s.mean_vi, s.t))
    return picked
