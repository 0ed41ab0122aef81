"""Command-line interface.

``rolecomm run`` executes the whole pipeline; ``rolecomm rbs``, ``rmst`` and
``scan`` run one stage each, exchanging intermediate CSV files.

Exit codes: 0 success, 2 usage, 3 parse, 4 configuration, 5 numerical
(non-convergence), 6 I/O, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, OutputError, RolecommError
from .graph_io import read_edge_list, read_nodes_file
from .pipeline import (
    PipelineConfig,
    StageError,
    check_output_dir,
    read_rmst_csv,
    read_similarity_csv,
    rmst_csv,
    robust_json,
    run_pipeline,
    scan_csv,
    similarity_csv,
)
from .rbs import RbsConfig, feature_matrix, rbs_matrix, spectral_radius
from .rmst import build_rmst
from .stability import default_times, markov_process, select_robust, time_scan

logger = logging.getLogger("rolecomm")


def _kmax(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--kmax must be an integer or 'auto', got {text!r}") from None


def _add_rbs_flags(p):
    p.add_argument("--alpha", type=float, default=0.95, help="path-length weighting in (0, 1) (default 0.95)")
    p.add_argument("--kmax", type=_kmax, default="auto", help="longest walk length, or 'auto' (default)")
    p.add_argument("--nodes-file", default=None, help="one node label per line; fixes order, adds isolated nodes")


def _add_rmst_flags(p):
    p.add_argument("--gamma", type=float, default=0.5, help="RMST relaxation (default 0.5)")


def _add_scan_flags(p):
    p.add_argument("--weighted", action="store_true", help="run the random walk on E * Y instead of E")
    p.add_argument("--t-min", type=float, default=0.1)
    p.add_argument("--t-max", type=float, default=1000.0)
    p.add_argument("--n-times", type=int, default=100, help="log-spaced Markov times (default 100)")
    p.add_argument("--runs", type=int, default=100, help="Louvain runs per Markov time (default 100)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vi-threshold", type=float, default=0.05)
    p.add_argument("--min-plateau", type=int, default=3)
    p.add_argument("--threads", type=int, default=None, help="worker threads for the scan (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rolecomm", description="Role-communities of directed networks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="full pipeline: edge list -> robust role-communities")
    run.add_argument("input", help="edge list file")
    _add_rbs_flags(run)
    _add_rmst_flags(run)
    _add_scan_flags(run)
    run.add_argument("--out", default="rolecomm_out", help="output directory")
    run.add_argument("--emit-similarity", action="store_true", help="also write similarity.csv")

    rbs = sub.add_parser("rbs", help="edge list -> similarity.csv")
    rbs.add_argument("input")
    _add_rbs_flags(rbs)
    rbs.add_argument("--out", default="rolecomm_out")

    rmst = sub.add_parser("rmst", help="similarity.csv -> rmst_edges.csv")
    rmst.add_argument("similarity")
    _add_rmst_flags(rmst)
    rmst.add_argument("--out", default="rolecomm_out")

    scan = sub.add_parser("scan", help="rmst_edges.csv -> scan.csv, robust_partitions.json")
    scan.add_argument("edges")
    _add_scan_flags(scan)
    scan.add_argument("--nodes-file", default=None, help="node order (default: nodes.txt next to the edge file)")
    scan.add_argument("--out", default="rolecomm_out")
    return parser


def _cmd_run(args) -> int:
    cfg = PipelineConfig(
        input_path=args.input,
        output_dir=args.out,
        nodes_path=args.nodes_file,
        alpha=args.alpha,
        k_max=args.kmax,
        gamma=args.gamma,
        weighted_similarity=args.weighted,
        t_min=args.t_min,
        t_max=args.t_max,
        n_times=args.n_times,
        runs=args.runs,
        seed=args.seed,
        vi_threshold=args.vi_threshold,
        min_plateau=args.min_plateau,
        emit_similarity=args.emit_similarity,
        threads=args.threads,
    )
    manifest, _ = run_pipeline(cfg)
    print(f"N={manifest.n_nodes} edges={manifest.n_edges} lambda_1={manifest.lambda_1:.6g} "
          f"K_max={manifest.k_max} RMST edges={manifest.rmst_edges}")
    for r in manifest.robust_scales:
        print(f"  t={r['t']:.4g}  communities={r['n_communities']}  mean VI={r['mean_vi']:.4f}  "
              f"plateau={r['plateau_length']}")
    return 0


def _cmd_rbs(args) -> int:
    out = check_output_dir(args.out)
    g = read_edge_list(args.input, args.nodes_file)
    cfg = RbsConfig(alpha=args.alpha, k_max=args.kmax).validate(g.n)
    spec = spectral_radius(g, tol=cfg.lambda_tolerance, alpha=cfg.alpha)
    fm = feature_matrix(g, cfg, spec)
    y = rbs_matrix(fm)
    (out / "similarity.csv").write_text(similarity_csv(y, g.labels), encoding="utf-8")
    meta = {"n_nodes": g.n, "n_edges": g.n_edges, "alpha": cfg.alpha, "lambda_1": spec.lambda_1,
            "beta": spec.beta, "k_max": fm.k_max}
    (out / "rbs.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return 0


def _cmd_rmst(args) -> int:
    out = check_output_dir(args.out)
    y, labels = read_similarity_csv(args.similarity)
    net = build_rmst(y, args.gamma)
    (out / "rmst_edges.csv").write_text(rmst_csv(net, labels), encoding="utf-8")
    (out / "nodes.txt").write_text("".join(f"{s}\n" for s in labels), encoding="utf-8")
    return 0


def _cmd_scan(args) -> int:
    out = check_output_dir(args.out)
    if not (0 < args.t_min < args.t_max) or args.n_times < 2 or args.runs < 2:
        raise ConfigError("need 0 < t_min < t_max, n_times >= 2, runs >= 2")
    adj, sim, labels = read_rmst_csv(args.edges)
    nodes_path = args.nodes_file
    if nodes_path is None and (Path(args.edges).parent / "nodes.txt").exists():
        nodes_path = Path(args.edges).parent / "nodes.txt"
    if nodes_path is not None:
        order = read_nodes_file(nodes_path)
        if sorted(order) != sorted(labels):
            raise ConfigError("nodes file does not match the RMST edge list")
        pos = [labels.index(s) for s in order]
        adj, sim = adj[np.ix_(pos, pos)], sim[np.ix_(pos, pos)]
    w = np.where(adj, sim, 0.0) if args.weighted else adj.astype(np.float64)
    mp = markov_process(w)
    scan = time_scan(mp, default_times(args.t_min, args.t_max, args.n_times), runs=args.runs,
                     seed=args.seed, threads=args.threads)
    robust = select_robust(scan, args.vi_threshold, args.min_plateau)
    (out / "scan.csv").write_text(scan_csv(scan), encoding="utf-8")
    (out / "robust_partitions.json").write_text(robust_json(robust), encoding="utf-8")
    return 0


COMMANDS = {"run": _cmd_run, "rbs": _cmd_rbs, "rmst": _cmd_rmst, "scan": _cmd_scan}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except StageError as exc:
        print(f"rolecomm: {exc}", file=sys.stderr)
        return exc.exit_code
    except RolecommError as exc:
        print(f"rolecomm: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"rolecomm: {exc}", file=sys.stderr)
        return OutputError.exit_code
    except ValueError as exc:
        print(f"rolecomm: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
