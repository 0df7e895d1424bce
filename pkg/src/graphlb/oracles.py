"""Sequential ground-truth algorithms and result verification."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .csr import CsrGraph
from .engine import INF, DistArray


def sequential_bfs(g: CsrGraph, source: int) -> DistArray:
    """Queue-based breadth-first levels: minimum edge count from the source."""
    if not 0 <= source < g.num_nodes:
        raise ValueError(f"source {source} out of range for {g.num_nodes} nodes")
    rows = g.row_offsets.tolist()
    cols = g.col_indices.tolist()
    dist = DistArray(g.num_nodes, source)
    values = dist.values
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = values[u]
        for e in range(rows[u], rows[u + 1]):
            v = cols[e]
            if values[v] == INF:
                values[v] = du + 1
                queue.append(v)
    return dist


def dijkstra(g: CsrGraph, source: int) -> DistArray:
    """Binary-heap shortest-path distances; missing weights count as 1."""
    if not 0 <= source < g.num_nodes:
        raise ValueError(f"source {source} out of range for {g.num_nodes} nodes")
    rows = g.row_offsets.tolist()
    cols = g.col_indices.tolist()
    wts = g.weights.tolist() if g.weights is not None else None
    if wts is not None and any(w < 0 for w in wts):
        raise ValueError("negative edge weight")
    dist = DistArray(g.num_nodes, source)
    values = dist.values
    heap = [(0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > values[u]:
            continue
        for e in range(rows[u], rows[u + 1]):
            v = cols[e]
            alt = du + (wts[e] if wts is not None else 1)
            if alt < values[v]:
                values[v] = alt
                heapq.heappush(heap, (alt, v))
    return dist


@dataclass
class VerificationReport:
    matched: bool
    mismatch_count: int
    first_mismatch: tuple[int, int, int] | None = None  # (node, expected, actual)


def _cells(d) -> list[int]:
    return d.values if isinstance(d, DistArray) else list(d)


def verify(expected, actual) -> VerificationReport:
    """Exact elementwise comparison; distances are integers, never toleranced."""
    exp = _cells(expected)
    act = _cells(actual)
    if len(exp) != len(act):
        raise ValueError(f"length mismatch: expected {len(exp)}, actual {len(act)}")
    mismatches = 0
    first = None
    for i, (e, a) in enumerate(zip(exp, act)):
        if e != a:
            mismatches += 1
            if first is None:
                first = (i, e, a)
    return VerificationReport(mismatches == 0, mismatches, first)
