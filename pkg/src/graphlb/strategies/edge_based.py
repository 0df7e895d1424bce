"""Edge-based task distribution (EP) over the coordinate layout.

The worklist holds edge indices; each kernel hands them to virtual threads
round-robin, which balances load almost perfectly since every thread
relaxes (nearly) the same number of edges. The costs: the 2E coordinate
layout may not fit the memory budget at all, and redundant pushes of a
destination's out-edges can blow the worklist past E, which is why every
kernel is followed by a condense pass.

With work chunking on, a successful relaxation appends the destination's
whole out-edge range with one cursor reservation instead of one per edge.
"""

from __future__ import annotations

import time

from ..csr import CooCapacityError, CsrGraph, DEFAULT_COO_BUDGET_CELLS, csr_to_coo
from ..engine import INF, DistArray, KernelConfig, atomic_relax_min, resolve_threads
from ..worklist import Worklist, wl_condense, wl_push_chunk
from .common import (
    INFEASIBLE_MEMORY,
    RelaxOp,
    StrategyRun,
    check_source,
    csr_locals,
    launch_with_regrow,
)


def run_ep(
    g: CsrGraph,
    source: int,
    op: RelaxOp,
    cfg: KernelConfig,
    chunked: bool = True,
    max_cells: int = DEFAULT_COO_BUDGET_CELLS,
) -> StrategyRun:
    check_source(g, source)
    t0 = time.perf_counter()
    try:
        coo = csr_to_coo(g, max_cells=max_cells)
    except CooCapacityError:
        return StrategyRun(
            "EP", None, status=INFEASIBLE_MEMORY, setup_overhead=time.perf_counter() - t0
        )
    rows, cols = csr_locals(g)  # cols doubles as the COO destination array
    srcs = coo.src.tolist()
    wts = None if (op.kind == "bfs" or coo.wt is None) else coo.wt.tolist()
    n = g.num_nodes
    dist = DistArray(n, source)
    capacity = max(1, g.num_edges)
    wl_in = Worklist(capacity)
    wl_out = Worklist(capacity)
    wl_push_chunk(wl_in, range(rows[source], rows[source + 1]))
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
            push = wl_push_chunk

            def body(tid, ctx):
                work = 0
                i = tid
                while i < size:
                    e = items[i]
                    work += 1
                    du = values[srcs[e]]
                    if du != INF:
                        v = cols[e]
                        cand = du + (1 if wts is None else wts[e])
                        if relax(dist, v, cand, ctx) or (recover and values[v] == cand):
                            if chunked:
                                push(wl_out, range(rows[v], rows[v + 1]), ctx)
                            else:
                                for out_edge in range(rows[v], rows[v + 1]):
                                    push(wl_out, (out_edge,), ctx)
                    i += threads
                ctx.work = work

            return body

        rec = launch_with_regrow(
            cfg, make_body, (wl_out,), threads,
            strategy="EP", iteration=iteration, active_items=size,
        )
        t_post = time.perf_counter()
        wl_condense(wl_out)
        wl_in.clear()
        wl_in, wl_out = wl_out, wl_in
        rec.overhead_wall_time += time.perf_counter() - t_post
        records.append(rec)
        iteration += 1

    return StrategyRun("EP", dist, records, setup_overhead=setup)
