"""Shared pieces of the task-distribution strategy drivers.

Every driver is a host-sequential loop launching kernels over the engine;
the kernels touch shared state only through the atomic helpers, so final
distances are schedule-independent. Drivers are not re-entrant: each run
owns its worklists and distance array.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..csr import CsrGraph
from ..engine import INF, KernelConfig, MetricsRecord, launch_kernel
from ..worklist import Worklist, WorklistOverflow

INFEASIBLE_MEMORY = "infeasible: memory"

STATUS_OK = "ok"


@dataclass(frozen=True)
class RelaxOp:
    """Relaxation rule: candidate = dist(source) + 1 for BFS, + weight for SSSP."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("bfs", "sssp"):
            raise ValueError(f"unknown relaxation kind {self.kind!r}")

    def candidate(self, source_value: int, edge_weight: int) -> int:
        return source_value + (1 if self.kind == "bfs" else edge_weight)

    @classmethod
    def bfs(cls) -> "RelaxOp":
        return cls("bfs")

    @classmethod
    def sssp(cls) -> "RelaxOp":
        return cls("sssp")


@dataclass
class StrategyRun:
    """Outcome of one strategy execution on one graph and source."""

    strategy: str
    dist: object | None  # DistArray, or None when infeasible
    records: list[MetricsRecord] = field(default_factory=list)
    status: str = STATUS_OK
    setup_overhead: float = 0.0
    mdt: int | None = None
    split_fraction: float | None = None

    @property
    def feasible(self) -> bool:
        return self.status == STATUS_OK

    def total_kernel_time(self) -> float:
        return sum(r.kernel_wall_time for r in self.records)

    def total_overhead_time(self) -> float:
        return self.setup_overhead + sum(r.overhead_wall_time for r in self.records)


def check_source(g: CsrGraph, source: int) -> None:
    if not 0 <= source < g.num_nodes:
        raise ValueError(f"source {source} out of range for {g.num_nodes} nodes")


def csr_locals(g: CsrGraph) -> tuple[list[int], list[int]]:
    """Row offsets and adjacency as plain lists for fast per-element access."""
    return g.row_offsets.tolist(), g.col_indices.tolist()


def edge_weight_list(g: CsrGraph, op: RelaxOp) -> list[int] | None:
    """Weights the kernels should add per edge; None means unit weights."""
    if op.kind == "bfs" or g.weights is None:
        return None
    return g.weights.tolist()


def launch_with_regrow(
    cfg: KernelConfig,
    make_body,
    out_worklists: tuple[Worklist, ...],
    threads: int,
    **meta,
) -> MetricsRecord:
    """Launch a kernel, regrowing output worklists and retrying on overflow.

    ``make_body(recover)`` builds the per-thread body; the retry runs with
    ``recover`` True so bodies re-push items whose relaxation already landed
    during the aborted attempt (the candidate equals the stored value), which
    keeps aborted iterations from losing frontier updates.
    """
    recover = False
    while True:
        try:
            return launch_kernel(cfg, make_body(recover), threads, **meta)
        except WorklistOverflow as exc:
            for wl in out_worklists:
                wl.clear()
                wl.grow(max(wl.capacity * 2, exc.required, 1))
            recover = True


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - t0
