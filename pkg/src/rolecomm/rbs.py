"""Role-Based Similarity: scaled directed walk counts and their cosine similarity."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ConfigError, ConvergenceError
from .graph_io import DirectedGraph

logger = logging.getLogger(__name__)

KMax = Union[int, str]


@dataclass(frozen=True)
class RbsConfig:
    alpha: float = 0.95
    k_max: KMax = "auto"
    lambda_tolerance: float = 1e-12
    truncation_tolerance: float = 1e-10

    def validate(self, n: int | None = None) -> "RbsConfig":
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.lambda_tolerance <= 0 or self.truncation_tolerance <= 0:
            raise ConfigError("tolerances must be positive")
        if self.k_max != "auto":
            if isinstance(self.k_max, bool) or not isinstance(self.k_max, (int, np.integer)) or self.k_max < 1:
                raise ConfigError(f"k_max must be a positive integer or 'auto', got {self.k_max!r}")
            if n is not None and self.k_max >= n:
                raise ConfigError(f"k_max must be < N = {n}, got {self.k_max}")
        if n is not None and n < 2:
            raise ConfigError("role similarity needs at least two nodes")
        return self


@dataclass(frozen=True)
class SpectralInfo:
    lambda_1: float
    beta: float
    iterations: int


@dataclass(frozen=True)
class FeatureMatrix:
    """Rows are node profiles ``[in_1 .. in_K | out_1 .. out_K]``."""

    x: np.ndarray
    k_max: int
    beta: float

    @property
    def in_block(self) -> np.ndarray:
        return self.x[:, : self.k_max]

    @property
    def out_block(self) -> np.ndarray:
        return self.x[:, self.k_max :]


def spectral_radius(g: DirectedGraph, tol: float = 1e-12, alpha: float = 0.95, max_iter: int | None = None) -> SpectralInfo:
    """Perron root of the adjacency matrix by power iteration.

    The spectral radius of ``A`` is the largest over its strongly connected
    components. Components without a cycle contribute 0, so an acyclic
    graph gives ``lambda_1 = 0`` and ``beta = alpha``. Each cyclic component
    is irreducible; iterating on ``A_c + I`` (primitive, hence free of the
    oscillation periodic components show) from the all-ones vector, the
    Collatz-Wielandt ratios ``min_i (Bv)_i / v_i <= rho(B) <= max_i (Bv)_i / v_i``
    bracket the root, and iteration stops once the bracket is narrower than
    ``tol * max(1, estimate)``.

    Raises
    ------
    ConvergenceError
        If some component needs more than ``max_iter`` (default
        ``10 n + 1000``) iterations.
    """
    a = g.adjacency()
    n = g.n
    if max_iter is None:
        max_iter = 10 * n + 1000
    n_comp, comp = connected_components(csr_matrix(a), directed=True, connection="strong")
    lam = 0.0
    total_iters = 0
    for c in range(n_comp):
        nodes = np.flatnonzero(comp == c)
        block = a[np.ix_(nodes, nodes)]
        if not block.any():
            continue  # single node without a self-loop
        rho, iters = _perron_shifted(block, tol, max_iter)
        total_iters += iters
        lam = max(lam, rho)
    return SpectralInfo(lambda_1=float(lam), beta=_beta(alpha, lam, tol), iterations=total_iters)


def _perron_shifted(block: np.ndarray, tol: float, max_iter: int) -> tuple[float, int]:
    m = block.shape[0]
    b = block + np.eye(m)
    v = np.ones(m)
    est = 0.0
    for it in range(1, max_iter + 1):
        w = b @ v
        ratios = w / v
        lo, hi = ratios.min(), ratios.max()
        est = 0.5 * (lo + hi) - 1.0
        if hi - lo <= tol * max(1.0, est):
            return est, it
        v = w / w.max()
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations", last_estimate=float(est))


def _beta(alpha: float, lambda_1: float, tol: float) -> float:
    return float(alpha / lambda_1) if lambda_1 > tol else float(alpha)


def feature_matrix(g: DirectedGraph, cfg: RbsConfig, spec: SpectralInfo) -> FeatureMatrix:
    """Stack ``(beta A^T)^k 1`` and ``(beta A)^k 1`` for ``k = 1..K``.

    Built by repeated matrix-vector products. With ``k_max='auto'`` the
    iteration stops at the first ``k`` where both vectors have max-norm
    below ``truncation_tolerance``, or at ``k = n - 1``.
    """
    cfg.validate(g.n)
    a = g.adjacency()
    at = np.ascontiguousarray(a.T)
    beta = spec.beta
    auto = cfg.k_max == "auto"
    k_cap = g.n - 1 if auto else int(cfg.k_max)
    ins, outs = [], []
    v_in = np.ones(g.n)
    v_out = np.ones(g.n)
    for _ in range(k_cap):
        v_in = beta * (at @ v_in)
        v_out = beta * (a @ v_out)
        ins.append(v_in)
        outs.append(v_out)
        if auto and max(np.abs(v_in).max(), np.abs(v_out).max()) < cfg.truncation_tolerance:
            break
    k = len(ins)
    x = np.empty((g.n, 2 * k))
    x[:, :k] = np.column_stack(ins)
    x[:, k:] = np.column_stack(outs)
    if auto:
        logger.info("auto-truncated walk profiles at K_max = %d", k)
    return FeatureMatrix(x=x, k_max=k, beta=beta)


def rbs_matrix(fm: FeatureMatrix | np.ndarray) -> np.ndarray:
    """Cosine similarity between all rows of the feature matrix.

    Rows with (relative) zero norm are similar only to themselves.
    The result is exactly symmetric and clipped to ``[0, 1]``.
    """
    x = fm.x if isinstance(fm, FeatureMatrix) else np.asarray(fm, dtype=np.float64)
    norms = np.sqrt(np.einsum("ij,ij->i", x, x))
    scale = norms.max() if norms.size else 0.0
    live = norms > np.finfo(np.float64).eps * scale if scale > 0 else np.zeros(x.shape[0], dtype=bool)
    u = np.zeros_like(x)
    u[live] = x[live] / norms[live, None]
    g = u @ u.T
    y = np.triu(g, 1)
    y = y + y.T
    np.clip(y, 0.0, 1.0, out=y)
    np.fill_diagonal(y, 1.0)
    return y


def role_similarity(g: DirectedGraph, cfg: RbsConfig | None = None) -> tuple[np.ndarray, FeatureMatrix, SpectralInfo]:
    cfg = (cfg or RbsConfig()).validate(g.n)
    spec = spectral_radius(g, tol=cfg.lambda_tolerance, alpha=cfg.alpha)
    fm = feature_matrix(g, cfg, spec)
    return rbs_matrix(fm), fm, spec
