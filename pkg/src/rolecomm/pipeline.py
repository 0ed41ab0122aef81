"""End-to-end pipeline: edge list -> RBS -> RMST -> Markov Stability scan -> robust scales."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from . import __version__
from .errors import ConfigError, OutputError, RolecommError
from .graph_io import DirectedGraph, read_edge_list
from .kernels import backend_name
from .rbs import RbsConfig, feature_matrix, rbs_matrix, spectral_radius
from .rmst import RmstNetwork, build_rmst
from .stability import (
    RobustScale,
    ScanResult,
    consecutive_vi,
    default_times,
    markov_process,
    select_robust,
    time_scan,
)

logger = logging.getLogger(__name__)

MANDATORY_OUTPUTS = ("manifest.json", "rmst_edges.csv", "scan.csv", "robust_partitions.json")


@dataclass
class PipelineConfig:
    input_path: str
    output_dir: str = "rolecomm_out"
    nodes_path: Union[str, None] = None
    alpha: float = 0.95
    k_max: Union[int, str] = "auto"
    gamma: float = 0.5
    weighted_similarity: bool = False
    t_min: float = 0.1
    t_max: float = 1000.0
    n_times: int = 100
    runs: int = 100
    seed: int = 0
    vi_threshold: float = 0.05
    min_plateau: int = 3
    emit_similarity: bool = False
    threads: Union[int, None] = None

    def validate(self) -> "PipelineConfig":
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.gamma < 0:
            raise ConfigError(f"gamma must be nonnegative, got {self.gamma}")
        if not (0 < self.t_min < self.t_max):
            raise ConfigError(f"need 0 < t_min < t_max, got t_min={self.t_min}, t_max={self.t_max}")
        if self.n_times < 2:
            raise ConfigError("n_times must be at least 2")
        if self.runs < 2:
            raise ConfigError("runs must be at least 2")
        if self.min_plateau < 1:
            raise ConfigError("min_plateau must be at least 1")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be at least 1")
        RbsConfig(alpha=self.alpha, k_max=self.k_max).validate()
        return self

    def times(self) -> np.ndarray:
        return default_times(self.t_min, self.t_max, self.n_times)


@dataclass
class RunManifest:
    config: dict
    tool_version: str
    backend: str
    n_nodes: int = 0
    n_edges: int = 0
    lambda_1: float = 0.0
    beta: float = 0.0
    power_iterations: int = 0
    k_max: int = 0
    rmst_edges: int = 0
    rmst_mst_edges: int = 0
    times: list = field(default_factory=list)
    scan: list = field(default_factory=list)
    robust_scales: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    status: str = "incomplete"


@dataclass
class Artifacts:
    graph: DirectedGraph
    similarity: np.ndarray
    rmst: RmstNetwork
    scan: list[ScanResult]
    robust: list[RobustScale]


class StageError(RolecommError):
    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        if isinstance(cause, RolecommError):
            self.exit_code = cause.exit_code
        elif isinstance(cause, OSError):
            self.exit_code = OutputError.exit_code
        else:
            self.exit_code = 1
        super().__init__(f"stage '{stage}' failed: {cause}")


def _fmt(x: float) -> str:
    return repr(float(x))


def similarity_csv(y: np.ndarray, labels) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(labels)
    for row in y:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_similarity_csv(path) -> tuple[np.ndarray, list[str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    labels = rows[0]
    y = np.array([[float(v) for v in r] for r in rows[1:]], dtype=np.float64)
    if y.shape != (len(labels), len(labels)):
        raise ValueError(f"{path}: expected a {len(labels)}x{len(labels)} matrix")
    return y, labels


def rmst_csv(net: RmstNetwork, labels) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source_label", "target_label", "similarity"])
    for i, j in net.edge_list():
        w.writerow([labels[i], labels[j], _fmt(net.similarity[i, j])])
    return buf.getvalue()


def read_rmst_csv(path) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Return ``(adjacency, similarity-on-edges, labels)`` from an RMST edge CSV."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    index: dict[str, int] = {}
    for r in rows:
        for key in ("source_label", "target_label"):
            index.setdefault(r[key], len(index))
    n = len(index)
    adj = np.zeros((n, n), dtype=bool)
    sim = np.zeros((n, n))
    for r in rows:
        i, j = index[r["source_label"]], index[r["target_label"]]
        adj[i, j] = adj[j, i] = True
        sim[i, j] = sim[j, i] = float(r["similarity"])
    return adj, sim, list(index)


def scan_csv(scan: list[ScanResult]) -> str:
    lines = ["t,n_communities,best_stability,mean_vi\n"]
    for r in scan:
        lines.append(f"{_fmt(r.t)},{r.n_communities},{_fmt(r.best_stability)},{_fmt(r.mean_vi)}\n")
    return "".join(lines)


def robust_json(robust: list[RobustScale]) -> str:
    items = [
        {
            "t": r.t,
            "n_communities": r.n_communities,
            "stability": r.stability,
            "mean_vi": r.mean_vi,
            "assignment": r.partition.assignment.tolist(),
        }
        for r in robust
    ]
    return json.dumps(items, indent=2) + "\n"


def check_output_dir(path) -> Path:
    """Create ``path`` if needed and make sure it is writable."""
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(dir=out, prefix=".probe-"):
            pass
    except OSError as exc:
        raise OutputError(f"output directory {out} is not writable: {exc}") from exc
    return out


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def emit_outputs(manifest: RunManifest, artifacts: Artifacts, output_dir, emit_similarity: bool = False) -> list[Path]:
    out = check_output_dir(output_dir)
    labels = artifacts.graph.labels
    files = {
        "rmst_edges.csv": rmst_csv(artifacts.rmst, labels),
        "scan.csv": scan_csv(artifacts.scan),
        "robust_partitions.json": robust_json(artifacts.robust),
    }
    if emit_similarity:
        files["similarity.csv"] = similarity_csv(artifacts.similarity, labels)
    else:
        stale = out / "similarity.csv"
        if stale.exists():
            stale.unlink()
    written = []
    for name, text in files.items():
        _write_atomic(out / name, text)
        written.append(out / name)
    # manifest last: its presence with status "complete" marks a finished run
    _write_atomic(out / "manifest.json", json.dumps(asdict(manifest), indent=2) + "\n")
    written.append(out / "manifest.json")
    return written


def _scan_summary(scan: list[ScanResult]) -> list[dict]:
    nxt = consecutive_vi(scan)
    return [
        {
            "t": r.t,
            "n_communities": r.n_communities,
            "best_stability": r.best_stability,
            "mean_vi": r.mean_vi,
            "vi_to_next": v,
        }
        for r, v in zip(scan, nxt)
    ]


def run_pipeline(cfg: PipelineConfig, write: bool = True) -> tuple[RunManifest, Artifacts]:
    """Run every stage and (by default) write the outputs.

    The result is a deterministic function of the input file and ``cfg``
    (wall-clock timings in the manifest aside).
    """
    cfg.validate()
    if write:
        out = check_output_dir(cfg.output_dir)
        stale = out / "manifest.json"
        if stale.exists():
            stale.unlink()
    manifest = RunManifest(config=asdict(cfg), tool_version=__version__, backend=backend_name())
    timings = manifest.timings

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            result = fn()
        except RolecommError as exc:
            if isinstance(exc, StageError):
                raise
            raise StageError(name, exc) from exc
        except (ValueError, OSError, np.linalg.LinAlgError) as exc:
            raise StageError(name, exc) from exc
        timings[name] = round(time.perf_counter() - t0, 6)
        logger.info("stage %s done in %.2fs", name, timings[name])
        return result

    g = stage("parse", lambda: read_edge_list(cfg.input_path, cfg.nodes_path))
    manifest.n_nodes, manifest.n_edges = g.n, g.n_edges
    rcfg = RbsConfig(alpha=cfg.alpha, k_max=cfg.k_max)

    def rbs_stage():
        rcfg.validate(g.n)
        spec = spectral_radius(g, tol=rcfg.lambda_tolerance, alpha=rcfg.alpha)
        fm = feature_matrix(g, rcfg, spec)
        return spec, fm, rbs_matrix(fm)

    spec, fm, y = stage("rbs", rbs_stage)
    manifest.lambda_1, manifest.beta = spec.lambda_1, spec.beta
    manifest.power_iterations, manifest.k_max = spec.iterations, fm.k_max

    net = stage("rmst", lambda: build_rmst(y, cfg.gamma))
    manifest.rmst_edges = net.n_edges
    manifest.rmst_mst_edges = int(net.mst_edges.shape[0])

    times = cfg.times()
    manifest.times = times.tolist()
    threads = cfg.threads or os.cpu_count() or 1

    def scan_stage():
        mp = markov_process(net, weighted=cfg.weighted_similarity)
        return time_scan(mp, times, runs=cfg.runs, seed=cfg.seed, threads=threads)

    scan = stage("scan", scan_stage)
    robust = stage("select", lambda: select_robust(scan, cfg.vi_threshold, cfg.min_plateau))
    manifest.scan = _scan_summary(scan)
    manifest.robust_scales = [
        {
            "t": r.t,
            "time_index": r.time_index,
            "n_communities": r.n_communities,
            "stability": r.stability,
            "mean_vi": r.mean_vi,
            "plateau_start_t": scan[r.plateau_start].t,
            "plateau_end_t": scan[r.plateau_end].t,
            "plateau_length": r.plateau_length,
        }
        for r in robust
    ]
    manifest.status = "complete"
    artifacts = Artifacts(graph=g, similarity=y, rmst=net, scan=scan, robust=robust)
    if write:
        stage("emit", lambda: emit_outputs(manifest, artifacts, cfg.output_dir, cfg.emit_similarity))
    return manifest, artifacts
