"""Node splitting (NS): rewrite high-degree nodes to bound the maximum degree.

Every node whose outdegree exceeds the threshold is split into
ceil(degree / mdt) nodes: the original (parent) keeps the first chunk of mdt
out-edges in adjacency order and the children take the following chunks, the
last one possibly smaller. Incoming edges stay on the parent only, so no new
edges are ever added; instead the runtime mirrors each parent distance
update onto its children and pushes them, which keeps the children's
out-edges flowing even though nothing can reach them directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..csr import INDEX_DTYPE, CsrGraph
from ..degrees import build_histogram, compute_mdt
from ..engine import INF, DistArray, KernelConfig, atomic_relax_min, resolve_threads
from ..worklist import Worklist, wl_push_node
from .common import RelaxOp, StrategyRun, check_source, csr_locals, edge_weight_list, launch_with_regrow


@dataclass
class SplitGraph:
    """CSR graph after node splitting plus parent/child bookkeeping.

    Children of original node v occupy the contiguous id range
    num_original + children_start[v] .. num_original + children_start[v+1].
    """

    graph: CsrGraph
    num_original: int
    parent_of: np.ndarray  # child rank -> original node id
    children_start: np.ndarray  # per original node, prefix of child counts
    mdt: int

    @property
    def num_children(self) -> int:
        return len(self.parent_of)

    @property
    def split_fraction(self) -> float:
        """Fraction of original nodes that were split."""
        if self.num_original == 0:
            return 0.0
        split_nodes = int(np.count_nonzero(np.diff(self.children_start)))
        return split_nodes / self.num_original

    def children_of(self, node: int) -> range:
        lo = self.num_original + int(self.children_start[node])
        hi = self.num_original + int(self.children_start[node + 1])
        return range(lo, hi)


def split_graph(g: CsrGraph, mdt: int) -> SplitGraph:
    """Split every node of outdegree > mdt; the result's max outdegree is <= mdt."""
    if mdt < 1:
        raise ValueError("mdt must be >= 1")
    n = g.num_nodes
    out = g.outdegrees()
    pieces = np.maximum(1, -(-out // mdt))
    child_counts = pieces - 1
    children_start = np.zeros(n + 1, dtype=INDEX_DTYPE)
    np.cumsum(child_counts, out=children_start[1:])
    total_children = int(children_start[-1])
    new_n = n + total_children

    rows = g.row_offsets
    new_deg = np.empty(new_n, dtype=INDEX_DTYPE)
    np.minimum(out, mdt, out=new_deg[:n])
    parent_of = np.repeat(np.arange(n, dtype=INDEX_DTYPE), child_counts)

    chunks: list[np.ndarray] = [g.col_indices[rows[v] : rows[v] + new_deg[v]] for v in range(n)]
    child_id = n
    for v in np.nonzero(child_counts)[0]:
        lo, hi = int(rows[v]), int(rows[v + 1])
        for start in range(lo + mdt, hi, mdt):
            end = min(start + mdt, hi)
            chunks.append(g.col_indices[start:end])
            new_deg[child_id] = end - start
            child_id += 1
    new_cols = np.concatenate(chunks) if chunks else np.empty(0, dtype=INDEX_DTYPE)

    new_weights = None
    if g.weights is not None:
        wchunks = [g.weights[rows[v] : rows[v] + new_deg[v]] for v in range(n)]
        for v in np.nonzero(child_counts)[0]:
            lo, hi = int(rows[v]), int(rows[v + 1])
            for start in range(lo + mdt, hi, mdt):
                wchunks.append(g.weights[start : min(start + mdt, hi)])
        new_weights = np.concatenate(wchunks) if wchunks else np.empty(0, dtype=INDEX_DTYPE)

    new_rows = np.zeros(new_n + 1, dtype=INDEX_DTYPE)
    np.cumsum(new_deg, out=new_rows[1:])
    split = CsrGraph(new_n, g.num_edges, new_rows, new_cols, new_weights)
    return SplitGraph(split, n, parent_of, children_start, mdt)


def run_ns(
    g: CsrGraph,
    source: int,
    op: RelaxOp,
    cfg: KernelConfig,
    bins: int = 10,
    mdt: int | None = None,
) -> StrategyRun:
    check_source(g, source)
    t0 = time.perf_counter()
    if mdt is None:
        mdt = compute_mdt(build_histogram(g, bins))
    sg = split_graph(g, mdt)
    rows, cols = csr_locals(sg.graph)
    wts = edge_weight_list(sg.graph, op)
    n_orig = sg.num_original
    n_all = sg.graph.num_nodes
    kid_start = sg.children_start.tolist()
    dist = DistArray(n_all, source)
    wl_in = Worklist(n_all, dedup_domain=n_all)
    wl_out = Worklist(n_all, dedup_domain=n_all)
    wl_push_node(wl_in, source)
    for child in sg.children_of(source):
        dist.values[child] = 0
        wl_push_node(wl_in, child)
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
                        for e in range(rows[node], rows[node + 1]):
                            v = cols[e]
                            work += 1
                            cand = dn + (1 if wts is None else wts[e])
                            if relax(dist, v, cand, ctx) or (recover and values[v] == cand):
                                push(wl_out, v, ctx)
                                if v < n_orig:
                                    # mirror the parent's value onto its children
                                    lo = kid_start[v]
                                    hi = kid_start[v + 1]
                                    for child in range(n_orig + lo, n_orig + hi):
                                        relax(dist, child, cand, ctx)
                                        push(wl_out, child, ctx)
                    i += threads
                ctx.work = work

            return body

        rec = launch_with_regrow(
            cfg, make_body, (wl_out,), threads,
            strategy="NS", iteration=iteration, active_items=size,
        )
        t_swap = time.perf_counter()
        wl_in.clear()
        wl_in, wl_out = wl_out, wl_in
        rec.overhead_wall_time += time.perf_counter() - t_swap
        records.append(rec)
        iteration += 1

    projected = DistArray(n_orig)
    projected.values[:] = dist.values[:n_orig]
    return StrategyRun(
        "NS",
        projected,
        records,
        setup_overhead=setup,
        mdt=mdt,
        split_fraction=sg.split_fraction,
    )
