"""Node-based task distribution (BS): the data-driven baseline.

Each kernel assigns the worklist's nodes to virtual threads round-robin and
a thread relaxes every out-edge of each node it owns, so per-thread work is
proportional to the owned nodes' outdegrees. On skewed degree distributions
this is exactly where the load imbalance comes from.
"""

from __future__ import annotations

import time

from ..csr import CsrGraph
from ..engine import INF, DistArray, KernelConfig, atomic_relax_min, resolve_threads
from ..worklist import Worklist, wl_push_node
from .common import RelaxOp, StrategyRun, check_source, csr_locals, edge_weight_list, launch_with_regrow


def run_bs(g: CsrGraph, source: int, op: RelaxOp, cfg: KernelConfig) -> StrategyRun:
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
        size = wl_in.size
        items = wl_in.items
        threads = resolve_threads(cfg, size)
        values = dist.values

        def make_body(recover, items=items, size=size, threads=threads, values=values):
            relax = atomic_relax_min
            push = wl_push_node

            def body(tid, ctx):
                work = 0
                i = tid
                while i < size:
                    node = items[i]
                    dn = values[node]
                    if dn != INF:
                        lo = rows[node]
                        hi = rows[node + 1]
                        if wts is None:
                            cand = dn + 1
                            for e in range(lo, hi):
                                v = cols[e]
                                work += 1
                                if relax(dist, v, cand, ctx) or (recover and values[v] == cand):
                                    push(wl_out, v, ctx)
                        else:
                            for e in range(lo, hi):
                                v = cols[e]
                                work += 1
                                cand = dn + wts[e]
                                if relax(dist, v, cand, ctx) or (recover and values[v] == cand):
                                    push(wl_out, v, ctx)
                    i += threads
                ctx.work = work

            return body

        rec = launch_with_regrow(
            cfg, make_body, (wl_out,), threads,
            strategy="BS", iteration=iteration, active_items=size,
        )
        t_swap = time.perf_counter()
        wl_in.clear()
        wl_in, wl_out = wl_out, wl_in
        rec.overhead_wall_time += time.perf_counter() - t_swap
        records.append(rec)
        iteration += 1

    return StrategyRun("BS", dist, records, setup_overhead=setup)
