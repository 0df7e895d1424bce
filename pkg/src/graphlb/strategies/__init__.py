"""The five task-distribution strategies driving BFS/SSSP kernels."""

from __future__ import annotations

from ..csr import DEFAULT_COO_BUDGET_CELLS, CsrGraph
from ..engine import KernelConfig
from .common import INFEASIBLE_MEMORY, RelaxOp, StrategyRun
from .edge_based import run_ep
from .hierarchical import FALLBACK_TAG, run_hp
from .node_based import run_bs
from .splitting import SplitGraph, run_ns, split_graph
from .workload import OffsetTable, decompose_invocation, find_offsets, run_wd

STRATEGY_TAGS = ("BS", "EP", "WD", "NS", "HP")


def run_strategy(
    tag: str,
    g: CsrGraph,
    source: int,
    op: RelaxOp,
    cfg: KernelConfig,
    *,
    bins: int = 10,
    mdt: int | None = None,
    chunked: bool = True,
    max_cells: int = DEFAULT_COO_BUDGET_CELLS,
) -> StrategyRun:
    """Run one strategy by tag with the knobs it understands."""
    tag = tag.upper()
    if tag == "BS":
        return run_bs(g, source, op, cfg)
    if tag == "EP":
        return run_ep(g, source, op, cfg, chunked=chunked, max_cells=max_cells)
    if tag == "WD":
        return run_wd(g, source, op, cfg)
    if tag == "NS":
        return run_ns(g, source, op, cfg, bins=bins, mdt=mdt)
    if tag == "HP":
        return run_hp(g, source, op, cfg, bins=bins, mdt=mdt)
    raise ValueError(f"unknown strategy tag {tag!r}")


__all__ = [
    "FALLBACK_TAG",
    "INFEASIBLE_MEMORY",
    "OffsetTable",
    "RelaxOp",
    "STRATEGY_TAGS",
    "SplitGraph",
    "StrategyRun",
    "decompose_invocation",
    "find_offsets",
    "run_bs",
    "run_ep",
    "run_hp",
    "run_ns",
    "run_strategy",
    "run_wd",
    "split_graph",
]
