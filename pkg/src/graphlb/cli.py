"""Command-line benchmark harness.

Exit codes: 0 success, 2 verification failure, 3 parse/config error,
4 every requested strategy was infeasible.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import (
    RunConfig,
    RunResult,
    VerificationError,
    load_graph,
    paper_desk_suite,
    run_benchmark,
)
from .csr import DEFAULT_COO_BUDGET_BYTES
from .degrees import build_histogram, compute_mdt
from .io import ParseError
from .report import emit_degree_histogram, emit_report
from .strategies import STRATEGY_TAGS
from .strategies.splitting import split_graph

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_CONFIG = 3
EXIT_INFEASIBLE = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphlb",
        description="Benchmark five task-distribution strategies for BFS/SSSP "
        "on an emulated data-parallel engine.",
    )
    src = p.add_argument_group("graph source")
    src.add_argument("--graph", metavar="PATH", help="graph file to load")
    src.add_argument(
        "--format", choices=("dimacs", "edgelist", "bin"), default="dimacs",
        help="file format for --graph (default: dimacs)",
    )
    src.add_argument(
        "--unweighted", action="store_true",
        help="treat an edge list as unweighted (ignore any weight column)",
    )
    src.add_argument("--gen", choices=("rmat", "er"), help="generate a synthetic graph")
    src.add_argument("--scale", type=int, default=14, help="log2 node count (default: 14)")
    src.add_argument("--edge-factor", type=int, default=8, help="edges per node (default: 8)")
    src.add_argument(
        "--rmat-params", metavar="A,B,C,D", default=None,
        help="quadrant probabilities for --gen rmat (default: 0.45,0.15,0.15,0.25)",
    )
    src.add_argument(
        "--suite", choices=("paper-desk",),
        help="run the default desk-scale corpus instead of a single graph",
    )

    run = p.add_argument_group("run")
    run.add_argument("--algo", choices=("bfs", "sssp"), default="sssp")
    run.add_argument(
        "--strategy", default="all",
        help="comma-separated subset of bs,ep,wd,ns,hp, or 'all' (default)",
    )
    run.add_argument("--source", type=int, default=0, help="source node (default: 0)")
    run.add_argument("--threads", type=int, default=None, help="virtual threads per kernel")
    run.add_argument("--workers", type=int, default=1, help="OS worker lanes (default: 1)")
    run.add_argument("--bins", type=int, default=10, help="histogram bins (default: 10)")
    run.add_argument("--mdt", type=int, default=None, help="override the degree threshold")
    run.add_argument("--no-chunk", action="store_true", help="disable work chunking in EP")
    run.add_argument(
        "--mem-budget", type=int, default=DEFAULT_COO_BUDGET_BYTES, metavar="BYTES",
        help="memory budget for the COO layout (default: 4e9)",
    )
    run.add_argument("--seed", type=int, default=1, help="generator seed (default: 1)")
    run.add_argument("--verify", action="store_true", help="check results against the oracle")
    run.add_argument("--replay", action="store_true", help="deterministic single-lane replay")

    out = p.add_argument_group("output")
    out.add_argument("--out", metavar="PATH", help="write the per-invocation report here")
    out.add_argument("--report", choices=("csv", "json"), default="csv")
    out.add_argument("--plot", action="store_true", help="render figures next to --out")
    out.add_argument(
        "--degree-hist", metavar="PATH",
        help="also emit the outdegree histogram CSV (pre/post split when NS runs)",
    )
    return p


def _parse_strategies(text: str) -> tuple[str, ...]:
    if text.strip().lower() == "all":
        return STRATEGY_TAGS
    tags = tuple(part.strip().upper() for part in text.split(",") if part.strip())
    if not tags:
        raise ValueError("at least one strategy is required")
    for tag in tags:
        if tag not in STRATEGY_TAGS:
            raise ValueError(f"unknown strategy tag {tag!r}")
    return tags


def _parse_rmat_params(text: str | None):
    if text is None:
        return RunConfig.rmat_params
    parts = [float(tok) for tok in text.split(",")]
    if len(parts) != 4:
        raise ValueError("--rmat-params needs four comma-separated probabilities")
    return tuple(parts)


def _config_from_args(args) -> RunConfig:
    if args.graph is None and args.gen is None and args.suite is None:
        raise ValueError("provide --graph, --gen, or --suite")
    return RunConfig(
        graph_path=args.graph,
        graph_format=args.format,
        weighted_edgelist=not args.unweighted,
        gen=args.gen,
        scale=args.scale,
        edge_factor=args.edge_factor,
        rmat_params=_parse_rmat_params(args.rmat_params),
        algo=args.algo,
        strategies=_parse_strategies(args.strategy),
        source=args.source,
        threads=args.threads,
        workers=args.workers,
        bins=args.bins,
        mdt=args.mdt,
        chunked=not args.no_chunk,
        mem_budget_bytes=args.mem_budget,
        seed=args.seed,
        verify=args.verify,
        replay=args.replay,
    )


def _print_summaries(results: list[RunResult]) -> None:
    header = (
        f"{'graph':<12} {'algo':<5} {'strategy':<9} {'status':<18} {'iters':>5} "
        f"{'subs':>5} {'relax':>10} {'push':>8} {'maxW':>7} {'avgW':>8} "
        f"{'kern_ms':>9} {'ovhd_ms':>9}"
    )
    print(header)
    print("-" * len(header))
    for result in results:
        for s in result.summaries:
            print(
                f"{s.graph:<12.12} {s.algo:<5} {s.strategy:<9} {s.status:<18.18} "
                f"{s.iterations:>5} {s.sub_iterations:>5} {s.atomic_relax_ops:>10} "
                f"{s.atomic_push_ops:>8} {s.work_max:>7} {s.work_avg:>8.2f} "
                f"{s.kernel_time * 1000:>9.2f} {s.overhead_time * 1000:>9.2f}"
            )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.suite:
            graphs = paper_desk_suite(seed=cfg.seed)
            if args.graph is not None:
                name, extra = load_graph(cfg)
                graphs.append((name, extra))
        else:
            graphs = [load_graph(cfg)]
        results = []
        for name, graph in graphs:
            if graph.num_nodes == 0:
                raise ValueError(f"graph {name!r} is empty")
            results.append(run_benchmark(cfg, graph=graph, graph_name=name))
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    entries = [entry for result in results for entry in result.entries]
    if args.out:
        emit_report(entries, args.out, format=args.report)
        print(f"report written to {args.out}")
        if args.plot:
            from .figures import render_report_figures

            stem = Path(args.out).with_suffix("")
            for path in render_report_figures([s for s, _ in entries], stem):
                print(f"figure written to {path}")
    if args.degree_hist:
        # use the first graph for the histogram; include the split when NS ran
        name, graph = graphs[0]
        split = None
        mdt = args.mdt
        if "NS" in cfg.strategies:
            if mdt is None:
                mdt = compute_mdt(build_histogram(graph, cfg.bins))
            split = split_graph(graph, mdt)
        emit_degree_histogram(graph, cfg.bins, args.degree_hist, split=split)
        print(f"degree histogram written to {args.degree_hist}")
        if args.plot:
            from .figures import render_degree_histogram

            fig_path = Path(args.degree_hist).with_suffix(".png")
            render_degree_histogram(graph, cfg.bins, fig_path, split=split)
            print(f"figure written to {fig_path}")

    _print_summaries(results)
    if results and all(result.all_infeasible for result in results):
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
