"""Graph containers: compressed sparse row (CSR) and coordinate list (COO).

CSR stores one monolithic adjacency array of length E plus N+1 row offsets,
so a node's out-edges are the slice ``col_indices[row_offsets[v]:row_offsets[v+1]]``.
COO duplicates the source id per edge and therefore needs 2E id cells
(3E with weights), which is what makes edge-based processing memory-hungry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Cell budget for COO conversion: a "4 GB" device with 4-byte node ids.
COO_ID_BYTES = 4
DEFAULT_COO_BUDGET_BYTES = 4_000_000_000
DEFAULT_COO_BUDGET_CELLS = DEFAULT_COO_BUDGET_BYTES // COO_ID_BYTES

INDEX_DTYPE = np.int64


class CooCapacityError(MemoryError):
    """The 2E (or 3E weighted) coordinate layout does not fit the cell budget."""

    def __init__(self, required_cells: int, available_cells: int):
        super().__init__(
            f"coordinate layout needs {required_cells} cells "
            f"but the budget allows {available_cells}"
        )
        self.required_cells = required_cells
        self.available_cells = available_cells


def _as_index_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=INDEX_DTYPE)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return arr


@dataclass
class CsrGraph:
    """Directed graph in CSR form; immutable after construction.

    ``weights`` is None for unweighted graphs, in which case the processing
    kernels treat every edge weight as 1.
    """

    num_nodes: int
    num_edges: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        self.row_offsets = _as_index_array(self.row_offsets, "row_offsets")
        self.col_indices = _as_index_array(self.col_indices, "col_indices")
        if self.weights is not None:
            self.weights = _as_index_array(self.weights, "weights")
        self._validate()
        for arr in (self.row_offsets, self.col_indices, self.weights):
            if arr is not None:
                arr.setflags(write=False)

    def _validate(self) -> None:
        n, m = self.num_nodes, self.num_edges
        if n < 0 or m < 0:
            raise ValueError("node and edge counts must be nonnegative")
        if len(self.row_offsets) != n + 1:
            raise ValueError(f"row_offsets must have length {n + 1}")
        if len(self.col_indices) != m:
            raise ValueError(f"col_indices must have length {m}")
        if n >= 0 and (self.row_offsets[0] != 0 or self.row_offsets[n] != m):
            raise ValueError("row_offsets must start at 0 and end at num_edges")
        if n > 0 and np.any(np.diff(self.row_offsets) < 0):
            raise ValueError("row_offsets must be nondecreasing")
        if m > 0:
            if self.col_indices.min() < 0 or self.col_indices.max() >= n:
                raise ValueError("col_indices contains a node id out of range")
        if self.weights is not None:
            if len(self.weights) != m:
                raise ValueError(f"weights must have length {m}")
            if m > 0 and self.weights.min() < 0:
                raise ValueError("edge weights must be nonnegative")

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def outdegrees(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    def outdegree(self, node: int) -> int:
        return int(self.row_offsets[node + 1] - self.row_offsets[node])

    @classmethod
    def from_edges(cls, num_nodes: int, src, dst, weights=None) -> "CsrGraph":
        """Build CSR from parallel source/destination arrays.

        Grouping by source uses a stable sort, so edges that share a source
        keep their input order in the adjacency slice.
        """
        src = _as_index_array(src, "src")
        dst = _as_index_array(dst, "dst")
        if len(src) != len(dst):
            raise ValueError("src and dst must have equal length")
        m = len(src)
        if m > 0 and (src.min() < 0 or src.max() >= num_nodes):
            raise ValueError("source node id out of range")
        order = np.argsort(src, kind="stable")
        counts = np.bincount(src, minlength=num_nodes)
        row_offsets = np.zeros(num_nodes + 1, dtype=INDEX_DTYPE)
        np.cumsum(counts, out=row_offsets[1:])
        wt = None
        if weights is not None:
            wt = _as_index_array(weights, "weights")[order]
        return cls(num_nodes, m, row_offsets, dst[order], wt)


@dataclass
class CooGraph:
    """Edge list as parallel (src, dst, wt) arrays, sorted by source."""

    src: np.ndarray
    dst: np.ndarray
    wt: np.ndarray | None
    num_nodes: int

    def __post_init__(self):
        self.src = _as_index_array(self.src, "src")
        self.dst = _as_index_array(self.dst, "dst")
        if self.wt is not None:
            self.wt = _as_index_array(self.wt, "wt")
        if len(self.src) != len(self.dst):
            raise ValueError("src and dst must have equal length")
        if self.wt is not None and len(self.wt) != len(self.src):
            raise ValueError("wt must match the edge count")
        if len(self.src) > 1 and np.any(np.diff(self.src) < 0):
            raise ValueError("edges must be sorted by source")
        for arr in (self.src, self.dst, self.wt):
            if arr is not None:
                arr.setflags(write=False)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    @property
    def num_cells(self) -> int:
        """Id/weight cells occupied by the layout: 2E, or 3E when weighted."""
        return (3 if self.wt is not None else 2) * self.num_edges


def coo_cells_required(num_edges: int, weighted: bool) -> int:
    return (3 if weighted else 2) * num_edges


def csr_to_coo(g: CsrGraph, max_cells: int = DEFAULT_COO_BUDGET_CELLS) -> CooGraph:
    """Expand CSR into COO, duplicating the source id across each node's edges.

    Raises CooCapacityError when the expanded layout would exceed ``max_cells``
    id/weight cells, which is how running out of device memory is modelled.
    """
    required = coo_cells_required(g.num_edges, g.is_weighted)
    if required > max_cells:
        raise CooCapacityError(required, max_cells)
    src = np.repeat(np.arange(g.num_nodes, dtype=INDEX_DTYPE), g.outdegrees())
    wt = None if g.weights is None else g.weights.copy()
    return CooGraph(src, g.col_indices.copy(), wt, g.num_nodes)
