"""CSV/JSON report emission: one row per kernel invocation plus one summary
row per strategy. Integer counters round-trip exactly; wall-clock columns are
informational."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from .bench import ImbalanceSummary
from .csr import CsrGraph
from .degrees import build_histogram
from .strategies import StrategyRun
from .strategies.splitting import SplitGraph

REPORT_COLUMNS = [
    "strategy",
    "algo",
    "graph",
    "iteration",
    "sub_iteration",
    "active_items",
    "threads",
    "max_work",
    "avg_work",
    "stddev_work",
    "atomic_relax_ops",
    "atomic_push_ops",
    "kernel_ms",
    "overhead_ms",
    "status",
]

SUMMARY_STATUS = "summary"


def invocation_rows(summary: ImbalanceSummary, run: StrategyRun) -> list[dict]:
    rows = []
    for rec in run.records:
        rows.append(
            {
                "strategy": rec.strategy,
                "algo": summary.algo,
                "graph": summary.graph,
                "iteration": rec.iteration,
                "sub_iteration": "" if rec.sub_iteration is None else rec.sub_iteration,
                "active_items": rec.active_items,
                "threads": rec.threads,
                "max_work": rec.work_max(),
                "avg_work": rec.work_avg(),
                "stddev_work": rec.work_stddev(),
                "atomic_relax_ops": rec.atomic_relax_ops,
                "atomic_push_ops": rec.atomic_push_ops,
                "kernel_ms": rec.kernel_wall_time * 1000.0,
                "overhead_ms": rec.overhead_wall_time * 1000.0,
                "status": "ok",
            }
        )
    return rows


def summary_row(summary: ImbalanceSummary) -> dict:
    return {
        "strategy": summary.strategy,
        "algo": summary.algo,
        "graph": summary.graph,
        "iteration": summary.iterations,
        "sub_iteration": summary.sub_iterations,
        "active_items": summary.total_active_items,
        "threads": summary.threads_max,
        "max_work": summary.work_max,
        "avg_work": summary.work_avg,
        "stddev_work": summary.work_stddev,
        "atomic_relax_ops": summary.atomic_relax_ops,
        "atomic_push_ops": summary.atomic_push_ops,
        "kernel_ms": summary.kernel_time * 1000.0,
        "overhead_ms": summary.overhead_time * 1000.0,
        "status": SUMMARY_STATUS if summary.status == "ok" else summary.status,
    }


def emit_report(
    entries: Sequence[tuple[ImbalanceSummary, StrategyRun]],
    path,
    format: str = "csv",
) -> Path:
    """Write invocation rows followed by per-strategy summary rows."""
    path = Path(path)
    inv_rows: list[dict] = []
    sum_rows: list[dict] = []
    for summary, run in entries:
        inv_rows.extend(invocation_rows(summary, run))
        sum_rows.append(summary_row(summary))
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS)
            writer.writeheader()
            for row in inv_rows:
                writer.writerow(row)
            for row in sum_rows:
                writer.writerow(row)
    elif format == "json":
        payload = {"columns": REPORT_COLUMNS, "invocations": inv_rows, "summaries": sum_rows}
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    else:
        raise ValueError(f"unknown report format {format!r}")
    return path


_INT_COLUMNS = {
    "iteration",
    "active_items",
    "threads",
    "max_work",
    "atomic_relax_ops",
    "atomic_push_ops",
}
_FLOAT_COLUMNS = {"avg_work", "stddev_work", "kernel_ms", "overhead_ms"}


def read_report_csv(path) -> list[dict]:
    """Parse an emitted CSV back into typed rows (round-trip checks)."""
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        for raw in csv.DictReader(fh):
            row = dict(raw)
            for key in _INT_COLUMNS:
                row[key] = int(row[key])
            for key in _FLOAT_COLUMNS:
                row[key] = float(row[key])
            row["sub_iteration"] = None if row["sub_iteration"] == "" else int(row["sub_iteration"])
            rows.append(row)
    return rows


def emit_degree_histogram(
    g: CsrGraph,
    bins: int,
    path,
    split: SplitGraph | None = None,
) -> Path:
    """Write the outdegree histogram as CSV rows of bin range and node count.

    With a split graph the file gains a leading ``phase`` column and carries
    both the pre-split and post-split distributions, binned over the original
    graph's degree range so the two curves share an axis.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    pre = build_histogram(g, bins)
    width = pre.max_degree / bins if pre.max_degree else 1.0

    def rows_for(hist_counts: Iterable[int]) -> list[tuple[float, float, int]]:
        out = []
        for i, count in enumerate(hist_counts, start=1):
            lo = (i - 1) * width
            hi = i * width
            out.append((lo, hi, int(count)))
        return out

    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if split is None:
            writer.writerow(["degree_bin_low", "degree_bin_high", "node_count"])
            for lo, hi, count in rows_for(pre.counts):
                writer.writerow([lo, hi, count])
        else:
            # bin the post-split degrees over the pre-split ranges
            post_counts = [0] * bins
            for deg in split.graph.outdegrees():
                if pre.max_degree == 0:
                    idx = 1
                else:
                    idx = max(1, -(-int(deg) * bins // pre.max_degree)) if deg else 1
                post_counts[min(idx, bins) - 1] += 1
            writer.writerow(["phase", "degree_bin_low", "degree_bin_high", "node_count"])
            for lo, hi, count in rows_for(pre.counts):
                writer.writerow(["pre", lo, hi, count])
            for lo, hi, count in rows_for(post_counts):
                writer.writerow(["post", lo, hi, count])
    return path
