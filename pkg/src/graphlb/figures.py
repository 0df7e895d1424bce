"""Optional matplotlib rendering of the report data next to the CSV/JSON.

The delimited output stays the primary artifact; these figures are a
convenience for eyeballing the time split, the per-thread work imbalance,
and the before/after node-splitting degree distributions.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import ImbalanceSummary
from .csr import CsrGraph
from .degrees import build_histogram
from .strategies.splitting import SplitGraph


def _labels(summaries: Sequence[ImbalanceSummary]) -> list[str]:
    graphs = {s.graph for s in summaries}
    if len(graphs) > 1:
        return [f"{s.graph}\n{s.strategy}" for s in summaries]
    return [s.strategy for s in summaries]


def render_time_split(summaries: Sequence[ImbalanceSummary], path) -> Path:
    """Stacked kernel vs. overhead milliseconds per strategy."""
    path = Path(path)
    labels = _labels(summaries)
    kernel = [s.kernel_time * 1000.0 for s in summaries]
    overhead = [s.overhead_time * 1000.0 for s in summaries]
    x = np.arange(len(summaries))
    fig, ax = plt.subplots(figsize=(max(4.0, 1.0 + 0.8 * len(summaries)), 3.6))
    ax.bar(x, kernel, label="kernel", color="#4878d0")
    ax.bar(x, overhead, bottom=kernel, label="overhead", color="#ee854a")
    ax.set_xticks(x, labels, fontsize=8)
    ax.set_ylabel("time (ms)")
    ax.set_title("Kernel vs. overhead time")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_work_imbalance(summaries: Sequence[ImbalanceSummary], path) -> Path:
    """Max/avg per-thread work and summed per-invocation spread per strategy."""
    path = Path(path)
    labels = _labels(summaries)
    x = np.arange(len(summaries))
    width = 0.27
    fig, ax = plt.subplots(figsize=(max(4.0, 1.0 + 0.9 * len(summaries)), 3.6))
    ax.bar(x - width, [s.work_max for s in summaries], width, label="max work")
    ax.bar(x, [s.work_avg for s in summaries], width, label="avg work")
    ax.bar(x + width, [s.work_stddev_summed for s in summaries], width, label="summed stddev")
    ax.set_xticks(x, labels, fontsize=8)
    ax.set_yscale("symlog")
    ax.set_ylabel("edge relaxations per thread")
    ax.set_title("Per-thread work imbalance")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_degree_histogram(
    g: CsrGraph, bins: int, path, split: SplitGraph | None = None
) -> Path:
    """Outdegree distribution, optionally with the post-split curve overlaid."""
    path = Path(path)
    pre = build_histogram(g, bins)
    centers = [(i + 0.5) * (pre.max_degree / bins if pre.max_degree else 1.0) for i in range(bins)]
    fig, ax = plt.subplots(figsize=(4.8, 3.6))
    ax.plot(centers, pre.counts, marker="o", color="#d62728", label="before split")
    if split is not None:
        post = [0] * bins
        for deg in split.graph.outdegrees():
            if pre.max_degree == 0:
                idx = 1
            else:
                idx = max(1, -(-int(deg) * bins // pre.max_degree)) if deg else 1
            post[min(idx, bins) - 1] += 1
        ax.plot(centers, post, marker="s", color="#2ca02c", label=f"after split (mdt={split.mdt})")
    ax.set_yscale("symlog")
    ax.set_xlabel("outdegree")
    ax.set_ylabel("node count")
    ax.set_title("Outdegree distribution")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(
    summaries: Sequence[ImbalanceSummary], out_stem
) -> list[Path]:
    """Render the standard figure set next to a report file stem."""
    stem = Path(out_stem)
    written = [
        render_time_split(summaries, stem.with_name(stem.name + "_times.png")),
        render_work_imbalance(summaries, stem.with_name(stem.name + "_work.png")),
    ]
    return written
