"""Workload decomposition (WD): block-distribute the active edges.

The worklist still holds nodes, but each kernel scans their outdegrees,
splits the total active edge count into contiguous chunks of
ceil(total / threads) edges, and hands every thread exactly one chunk. A
separate offset pass binary-searches the outdegree prefix sums so each
thread knows which worklist node and which edge within it to start from;
the kernel's inner loop then walks across node boundaries as the chunk
spills from one node's adjacency into the next. Scan and offset time is
bookkeeping, not kernel time.
"""

from __future__ import annotations

import time
from bisect import bisect_right
from dataclasses import dataclass

from ..csr import CsrGraph
from ..engine import INF, DistArray, KernelConfig, MetricsRecord, atomic_relax_min, resolve_threads
from ..scan import inclusive_scan
from ..worklist import Worklist, wl_push_node
from .common import RelaxOp, StrategyRun, check_source, csr_locals, edge_weight_list, launch_with_regrow

IDLE = -1


@dataclass
class OffsetTable:
    """Per-thread start positions: worklist index and edge offset within it.

    Threads past the last active edge are idle and marked with node offset -1.
    """

    node_offsets: list[int]
    edge_offsets: list[int]

    def __len__(self) -> int:
        return len(self.node_offsets)

    def entry(self, tid: int) -> tuple[int, int]:
        return self.node_offsets[tid], self.edge_offsets[tid]


def find_offsets(
    g: CsrGraph,
    wl: Worklist,
    prefix: list[int],
    edges_per_thread: int,
    threads: int,
) -> OffsetTable:
    """Locate each thread's starting node and in-node edge offset.

    ``prefix`` must be the inclusive scan of the worklist nodes' (remaining)
    outdegrees; thread t starts at global active-edge index
    t * edges_per_thread, found by binary search over the prefix sums.
    """
    if len(prefix) != wl.size:
        raise ValueError(f"prefix length {len(prefix)} does not match worklist size {wl.size}")
    if edges_per_thread < 1:
        raise ValueError("edges_per_thread must be >= 1")
    total = prefix[-1] if prefix else 0
    node_offsets = [IDLE] * threads
    edge_offsets = [0] * threads
    for tid in range(threads):
        start = tid * edges_per_thread
        if start >= total:
            break
        j = bisect_right(prefix, start)
        node_offsets[tid] = j
        edge_offsets[tid] = start - (prefix[j - 1] if j else 0)
    return OffsetTable(node_offsets, edge_offsets)


def decompose_invocation(
    cfg: KernelConfig,
    g: CsrGraph,
    rows: list[int],
    cols: list[int],
    wts: list[int] | None,
    dist: DistArray,
    wl_in: Worklist,
    wl_out: Worklist,
    *,
    strategy: str,
    iteration: int,
    sub_iteration: int | None = None,
    base_offsets: list[int] | None = None,
) -> MetricsRecord | None:
    """One decomposition kernel over the (remaining) edges of ``wl_in``.

    ``base_offsets`` skips that many leading edges per worklist node, which
    lets hierarchical processing hand over partially processed nodes. Returns
    None when the active nodes have no edges left to process.
    """
    t_ov = time.perf_counter()
    size = wl_in.size
    items = wl_in.items
    if base_offsets is None:
        rem = [rows[items[i] + 1] - rows[items[i]] for i in range(size)]
    else:
        rem = [rows[items[i] + 1] - rows[items[i]] - base_offsets[i] for i in range(size)]
    prefix = inclusive_scan(rem)
    total = prefix[-1] if prefix else 0
    if total == 0:
        return None
    threads = resolve_threads(cfg, total)
    ept = -(-total // threads)
    table = find_offsets(g, wl_in, prefix, ept, threads)
    overhead = time.perf_counter() - t_ov

    node_off = table.node_offsets
    edge_off = table.edge_offsets
    values = dist.values

    def make_body(recover):
        relax = atomic_relax_min
        push = wl_push_node

        def body(tid, ctx):
            start = tid * ept
            if start >= total:
                ctx.work = 0
                return
            count = ept if start + ept <= total else total - start
            wi = node_off[tid]
            offset = edge_off[tid]
            node = items[wi]
            deg = rem[wi]
            base = rows[node] + (base_offsets[wi] if base_offsets is not None else 0)
            dn = values[node]
            work = 0
            for _ in range(count):
                while offset >= deg:
                    wi += 1
                    node = items[wi]
                    deg = rem[wi]
                    offset = 0
                    base = rows[node] + (base_offsets[wi] if base_offsets is not None else 0)
                    dn = values[node]
                e = base + offset
                v = cols[e]
                work += 1
                if dn != INF:
                    cand = dn + (1 if wts is None else wts[e])
                    if relax(dist, v, cand, ctx) or (recover and values[v] == cand):
                        push(wl_out, v, ctx)
                offset += 1
            ctx.work = work

        return body

    rec = launch_with_regrow(
        cfg, make_body, (wl_out,), threads,
        strategy=strategy, iteration=iteration, sub_iteration=sub_iteration,
        active_items=size,
    )
    rec.overhead_wall_time += overhead
    return rec


def run_wd(g: CsrGraph, source: int, op: RelaxOp, cfg: KernelConfig) -> StrategyRun:
    check_source(g, source)
    t0 = time.perf_counter()
    rows, cols = csr_locals(g)
    wts = edge_weight_list(g, op)
    n = g.num_nodes
    dist = DistArray(n, source)
    wl_in = Worklist(n, dedup_domain=n)
    wl_out = Worklist(n, dedup_domain=n)
    wl_push_node(wl_in, source)
    setup = time.perf_counter() - t0

    records = []
    iteration = 0
    while wl_in.size > 0:
        rec = decompose_invocation(
            cfg, g, rows, cols, wts, dist, wl_in, wl_out,
            strategy="WD", iteration=iteration,
        )
        if rec is None:
            # active nodes have no out-edges; nothing further can relax
            break
        t_swap = time.perf_counter()
        wl_in.clear()
        wl_in, wl_out = wl_out, wl_in
        rec.overhead_wall_time += time.perf_counter() - t_swap
        records.append(rec)
        iteration += 1

    return StrategyRun("WD", dist, records, setup_overhead=setup)
