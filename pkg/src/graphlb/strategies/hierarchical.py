"""Hierarchical processing (HP): time-decompose each iteration into sub-iterations.

Each super-iteration processes its node worklist in waves: sub-iteration s
relaxes the window of up to mdt out-edges starting at s * mdt for every node
in the current sublist, and nodes with edges beyond the window carry over to
the next sublist. All threads are therefore balanced to within the threshold
without creating any new nodes. Because the sublists shrink, launches would
eventually run nearly empty, so once a list is smaller than the block size
the remaining edges are handed to the workload-decomposition kernel instead
(both at the start of an iteration and between sub-iterations).
"""

from __future__ import annotations

import time

from ..csr import CsrGraph
from ..degrees import build_histogram, compute_mdt
from ..engine import INF, DistArray, KernelConfig, atomic_relax_min, resolve_threads
from ..worklist import Worklist, wl_push_node
from .common import RelaxOp, StrategyRun, check_source, csr_locals, edge_weight_list, launch_with_regrow
from .workload import decompose_invocation

FALLBACK_TAG = "WD-fallback"


def run_hp(
    g: CsrGraph,
    source: int,
    op: RelaxOp,
    cfg: KernelConfig,
    bins: int = 10,
    mdt: int | None = None,
    fallback: bool = True,
) -> StrategyRun:
    check_source(g, source)
    t0 = time.perf_counter()
    if mdt is None:
        mdt = compute_mdt(build_histogram(g, bins))
    rows, cols = csr_locals(g)
    wts = edge_weight_list(g, op)
    n = g.num_nodes
    dist = DistArray(n, source)
    super_in = Worklist(n, dedup_domain=n)
    super_out = Worklist(n, dedup_domain=n)
    sub_a = Worklist(n, dedup_domain=n)
    sub_b = Worklist(n, dedup_domain=n)
    wl_push_node(super_in, source)
    threshold = cfg.block_size
    setup = time.perf_counter() - t0

    records = []
    iteration = 0
    while super_in.size > 0:
        if fallback and super_in.size < threshold:
            rec = decompose_invocation(
                cfg, g, rows, cols, wts, dist, super_in, super_out,
                strategy=FALLBACK_TAG, iteration=iteration,
            )
            if rec is not None:
                records.append(rec)
        else:
            current = super_in
            spare = sub_a
            sub_iteration = 0
            while current.size > 0:
                if fallback and sub_iteration > 0 and current.size < threshold:
                    base = [
                        min(sub_iteration * mdt, rows[node + 1] - rows[node])
                        for node in current.live()
                    ]
                    rec = decompose_invocation(
                        cfg, g, rows, cols, wts, dist, current, super_out,
                        strategy=FALLBACK_TAG, iteration=iteration,
                        sub_iteration=sub_iteration, base_offsets=base,
                    )
                    if rec is not None:
                        records.append(rec)
                    if current is not super_in:
                        current.clear()
                    break
                size = current.size
                items = current.items
                spare.clear()
                next_sub = spare
                threads = resolve_threads(cfg, size)
                values = dist.values
                window = sub_iteration * mdt

                def make_body(recover, items=items, size=size, threads=threads,
                              values=values, window=window, next_sub=next_sub):
                    relax = atomic_relax_min
                    push = wl_push_node

                    def body(tid, ctx):
                        work = 0
                        i = tid
                        while i < size:
                            node = items[i]
                            lo = rows[node]
                            hi = rows[node + 1]
                            start = lo + window
                            if start < hi:
                                end = start + mdt
                                if end > hi:
                                    end = hi
                                dn = values[node]
                                if dn != INF:
                                    for e in range(start, end):
                                        v = cols[e]
                                        work += 1
                                        cand = dn + (1 if wts is None else wts[e])
                                        if relax(dist, v, cand, ctx) or (
                                            recover and values[v] == cand
                                        ):
                                            push(super_out, v, ctx)
                                if end < hi:
                                    push(next_sub, node, ctx)
                            i += threads
                        ctx.work = work

                    return body

                rec = launch_with_regrow(
                    cfg, make_body, (super_out, next_sub), threads,
                    strategy="HP", iteration=iteration,
                    sub_iteration=sub_iteration, active_items=size,
                )
                records.append(rec)
                if current is not super_in:
                    current.clear()
                current, spare = next_sub, (sub_b if next_sub is sub_a else sub_a)
                sub_iteration += 1
        t_swap = time.perf_counter()
        super_in.clear()
        super_in, super_out = super_out, super_in
        if records:
            records[-1].overhead_wall_time += time.perf_counter() - t_swap
        iteration += 1

    return StrategyRun("HP", dist, records, setup_overhead=setup, mdt=mdt)
