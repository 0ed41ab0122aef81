"""Edge-list ingestion and the directed graph container."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParseStats:
    n_duplicates: int = 0
    n_self_loops: int = 0
    n_weights_ignored: int = 0


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Unweighted directed graph on nodes ``0..n-1``.

    ``edges`` is an ``(m, 2)`` int64 array of ``(source, target)`` pairs,
    unique, in first-appearance order. ``labels`` holds the external node
    identifiers, index-aligned.
    """

    n: int
    edges: np.ndarray
    labels: tuple[str, ...]
    stats: ParseStats = field(default_factory=ParseStats)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        if edges.size and (edges.min() < 0 or edges.max() >= self.n):
            raise ValueError("edge endpoint outside [0, n)")
        if len(self.labels) != self.n:
            raise ValueError("labels must be index-aligned with nodes")
        keys = edges[:, 0] * max(self.n, 1) + edges[:, 1]
        if np.unique(keys).size != keys.size:
            raise ValueError("duplicate edges")
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(n, edges, tuple(labels))

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def adjacency(self, dtype=np.float64) -> np.ndarray:
        """Dense adjacency matrix, ``a[i, j] = 1`` iff ``i -> j``."""
        a = np.zeros((self.n, self.n), dtype=dtype)
        a[self.edges[:, 0], self.edges[:, 1]] = 1
        return a

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in self.edges}

    def permuted(self, perm: Sequence[int]) -> "DirectedGraph":
        """Relabel node ``i`` as ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        labels = [""] * self.n
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        return DirectedGraph(self.n, perm[self.edges], tuple(labels))


@dataclass(frozen=True)
class DegreeVectors:
    k_in: np.ndarray
    k_out: np.ndarray


def degrees(g: DirectedGraph) -> DegreeVectors:
    k_in = np.bincount(g.edges[:, 1], minlength=g.n).astype(np.int64)
    k_out = np.bincount(g.edges[:, 0], minlength=g.n).astype(np.int64)
    return DegreeVectors(k_in=k_in, k_out=k_out)


def _tokenize(line: str) -> list[str]:
    if "," in line:
        return [tok.strip() for tok in line.split(",")]
    return line.split()


def parse_edge_list(text: str | Iterable[str], nodes: Sequence[str] | None = None) -> DirectedGraph:
    """Parse a whitespace- or comma-separated edge list.

    Lines starting with ``#`` and blank lines are skipped. An optional third
    numeric column is accepted and ignored. Node indices follow first
    appearance, unless ``nodes`` is given, which fixes the order (and may
    declare isolated nodes); an edge naming an undeclared node is then an
    error.

    Raises
    ------
    ParseError
        On a line with the wrong number of tokens, a non-numeric weight, an
        unknown node (when ``nodes`` is given), or when no edges are found.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    index: dict[str, int] = {}
    fixed = nodes is not None
    if fixed:
        for lineno, label in enumerate(nodes, start=1):
            if label in index:
                raise ParseError(f"duplicate node label {label!r} in nodes file", lineno)
            index[label] = len(index)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    n_dup = n_loops = n_weights = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = _tokenize(line)
        if len(toks) not in (2, 3) or not all(toks[:2]):
            raise ParseError(f"expected 'source target [weight]', got {raw.rstrip()!r}", lineno)
        if len(toks) == 3:
            try:
                float(toks[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {toks[2]!r}", lineno) from None
            n_weights += 1
        ends = []
        for tok in toks[:2]:
            if tok not in index:
                if fixed:
                    raise ParseError(f"node {tok!r} not declared in nodes file", lineno)
                index[tok] = len(index)
            ends.append(index[tok])
        edge = (ends[0], ends[1])
        if edge in seen:
            n_dup += 1
            continue
        if edge[0] == edge[1]:
            n_loops += 1
        seen.add(edge)
        edges.append(edge)

    if not edges:
        raise ParseError("empty edge list")
    if n_dup:
        logger.warning("collapsed %d duplicate edge line(s)", n_dup)
    if n_loops:
        logger.warning("kept %d self-loop(s)", n_loops)
    if n_weights:
        logger.warning("ignored weight column on %d line(s); the graph is treated as unweighted", n_weights)
    labels = tuple(index)
    return DirectedGraph(
        len(labels),
        np.asarray(edges, dtype=np.int64),
        labels,
        ParseStats(n_duplicates=n_dup, n_self_loops=n_loops, n_weights_ignored=n_weights),
    )


def read_nodes_file(path) -> list[str]:
    labels = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                labels.append(line)
    return labels


def read_edge_list(path, nodes_path=None) -> DirectedGraph:
    nodes = read_nodes_file(nodes_path) if nodes_path is not None else None
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), nodes=nodes)


def format_edge_list(g: DirectedGraph) -> str:
    return "".join(f"{g.labels[i]} {g.labels[j]}\n" for i, j in g.edges)


def write_edge_list(g: DirectedGraph, path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")
