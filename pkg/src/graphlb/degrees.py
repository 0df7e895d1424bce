"""Outdegree statistics and the histogram-based degree threshold.

The threshold (MDT, maximum-degree threshold) drives node splitting and
hierarchical processing: bin the outdegrees into ``bin_count`` equal-width
right-closed ranges over [0, max_degree], take the most populated bin, and
scale its 1-based index back into degree units. Picking the fullest bin puts
the cap where most nodes already sit, which minimizes how many nodes must be
split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csr import CsrGraph


@dataclass
class DegreeStats:
    max: int
    avg: float
    stddev: float


def degree_stats(g: CsrGraph) -> DegreeStats:
    """Max, mean, and population standard deviation of the outdegrees."""
    if g.num_nodes < 1:
        raise ValueError("degree statistics need at least one node")
    out = g.outdegrees()
    return DegreeStats(int(out.max()), float(out.mean()), float(out.std()))


@dataclass
class DegreeHistogram:
    bin_count: int
    bin_width: float
    counts: np.ndarray
    max_degree: int
    arg_max_bin: int  # 1-based; ties break to the lowest index
    mdt: int | None = None


def build_histogram(g: CsrGraph, bins: int = 10) -> DegreeHistogram:
    """Bin outdegrees into ``bins`` equal-width right-closed ranges.

    Degree-zero nodes land in bin 1, so the counts always sum to num_nodes.
    The threshold field stays unset until :func:`compute_mdt`.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    out = g.outdegrees()
    max_degree = int(out.max()) if g.num_nodes > 0 else 0
    if max_degree == 0:
        idx = np.ones(g.num_nodes, dtype=np.int64)
    else:
        # degree d > 0 falls in bin ceil(d * bins / max_degree); degree 0 in bin 1
        idx = -(-(out * bins) // max_degree)
        idx[out == 0] = 1
    counts = np.bincount(idx, minlength=bins + 1)[1 : bins + 1]
    arg_max_bin = int(np.argmax(counts)) + 1 if bins > 0 else 1
    return DegreeHistogram(
        bin_count=bins,
        bin_width=max_degree / bins,
        counts=counts,
        max_degree=max_degree,
        arg_max_bin=arg_max_bin,
    )


def compute_mdt(h: DegreeHistogram) -> int:
    """Degree threshold: floor(arg_max_bin / bin_count * max_degree), at least 1."""
    mdt = max(1, (h.arg_max_bin * h.max_degree) // h.bin_count)
    h.mdt = int(mdt)
    return h.mdt
