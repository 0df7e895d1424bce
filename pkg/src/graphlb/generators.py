"""Synthetic graph generators and small deterministic fixtures.

All generators are pure functions of their parameters and seed: calling one
twice with the same arguments yields identical arrays. Self-loops and
parallel edges are kept, and synthetic weights are uniform integers in
[1, max_weight].
"""

from __future__ import annotations

import numpy as np

from .csr import INDEX_DTYPE, CsrGraph

DEFAULT_RMAT_PARAMS = (0.45, 0.15, 0.15, 0.25)
DEFAULT_MAX_WEIGHT = 100


def _weights(rng: np.random.Generator, m: int, max_weight: int) -> np.ndarray:
    return rng.integers(1, max_weight + 1, size=m, dtype=INDEX_DTYPE)


def generate_rmat(
    scale: int,
    edge_factor: int,
    params: tuple[float, float, float, float] = DEFAULT_RMAT_PARAMS,
    seed: int = 0,
    weighted: bool = True,
    max_weight: int = DEFAULT_MAX_WEIGHT,
) -> CsrGraph:
    """Recursive-matrix graph: 2**scale nodes, edge_factor * 2**scale edges.

    Each edge is drawn by descending ``scale`` quadrant levels; (a, b, c, d)
    are the per-level probabilities of the four quadrants. Skewed defaults
    give the power-law outdegree distribution typical of social networks.
    """
    a, b, c, d = params
    if abs(a + b + c + d - 1.0) > 1e-9:
        raise ValueError(f"quadrant probabilities must sum to 1, got {a + b + c + d}")
    if min(a, b, c, d) < 0:
        raise ValueError("quadrant probabilities must be nonnegative")
    if scale < 1:
        raise ValueError("scale must be >= 1")
    if edge_factor < 0:
        raise ValueError("edge_factor must be nonnegative")
    n = 1 << scale
    m = edge_factor * n
    rng = np.random.default_rng(seed)
    src = np.zeros(m, dtype=INDEX_DTYPE)
    dst = np.zeros(m, dtype=INDEX_DTYPE)
    for _ in range(scale):
        u = rng.random(m)
        row_bit = u >= a + b
        col_bit = ((u >= a) & (u < a + b)) | (u >= a + b + c)
        src = (src << 1) | row_bit
        dst = (dst << 1) | col_bit
    wt = _weights(rng, m, max_weight) if weighted else None
    return CsrGraph.from_edges(n, src, dst, wt)


def generate_er(
    num_nodes: int,
    num_edges: int,
    seed: int = 0,
    weighted: bool = True,
    max_weight: int = DEFAULT_MAX_WEIGHT,
) -> CsrGraph:
    """Uniform random graph: ``num_edges`` edges with independently uniform endpoints."""
    if num_nodes < 0 or num_edges < 0:
        raise ValueError("counts must be nonnegative")
    if num_edges > num_nodes * num_nodes:
        raise ValueError(
            f"requested {num_edges} edges exceed {num_nodes}^2 possible endpoints"
        )
    if num_edges > 0 and num_nodes == 0:
        raise ValueError("cannot place edges in an empty graph")
    rng = np.random.default_rng(seed)
    src = rng.integers(0, num_nodes, size=num_edges, dtype=INDEX_DTYPE) if num_edges else []
    dst = rng.integers(0, num_nodes, size=num_edges, dtype=INDEX_DTYPE) if num_edges else []
    wt = _weights(rng, num_edges, max_weight) if weighted else None
    return CsrGraph.from_edges(num_nodes, src, dst, wt)


def path_graph(n: int, weighted: bool = False, seed: int = 0) -> CsrGraph:
    """Directed path 0 -> 1 -> ... -> n-1."""
    if n < 1:
        raise ValueError("path needs at least one node")
    src = np.arange(n - 1, dtype=INDEX_DTYPE)
    dst = src + 1
    wt = _weights(np.random.default_rng(seed), n - 1, DEFAULT_MAX_WEIGHT) if weighted else None
    return CsrGraph.from_edges(n, src, dst, wt)


def star_graph(n: int, weighted: bool = False, seed: int = 0) -> CsrGraph:
    """Node 0 with out-edges to every other node; leaves have outdegree 0."""
    if n < 1:
        raise ValueError("star needs at least one node")
    src = np.zeros(n - 1, dtype=INDEX_DTYPE)
    dst = np.arange(1, n, dtype=INDEX_DTYPE)
    wt = _weights(np.random.default_rng(seed), n - 1, DEFAULT_MAX_WEIGHT) if weighted else None
    return CsrGraph.from_edges(n, src, dst, wt)


def ring_graph(n: int, weighted: bool = False, seed: int = 0) -> CsrGraph:
    """Directed cycle 0 -> 1 -> ... -> n-1 -> 0; every outdegree is 1."""
    if n < 1:
        raise ValueError("ring needs at least one node")
    src = np.arange(n, dtype=INDEX_DTYPE)
    dst = (src + 1) % n
    wt = _weights(np.random.default_rng(seed), n, DEFAULT_MAX_WEIGHT) if weighted else None
    return CsrGraph.from_edges(n, src, dst, wt)


def graph_from_degrees(degrees, weighted: bool = False, seed: int = 0) -> CsrGraph:
    """Graph realizing an outdegree multiset; every edge targets node 0.

    Useful for exercising degree statistics and histogram thresholds on a
    prescribed distribution without sampling.
    """
    degrees = np.asarray(degrees, dtype=INDEX_DTYPE)
    if len(degrees) == 0:
        raise ValueError("need at least one node")
    if degrees.min() < 0:
        raise ValueError("degrees must be nonnegative")
    row_offsets = np.zeros(len(degrees) + 1, dtype=INDEX_DTYPE)
    np.cumsum(degrees, out=row_offsets[1:])
    m = int(row_offsets[-1])
    cols = np.zeros(m, dtype=INDEX_DTYPE)
    wt = _weights(np.random.default_rng(seed), m, DEFAULT_MAX_WEIGHT) if weighted else None
    return CsrGraph(len(degrees), m, row_offsets, cols, wt)
