"""Host-side emulation of the GPU kernel-launch execution model.

A kernel launch runs a per-thread body once for every virtual thread id in
[0, T); the many virtual threads are multiplexed onto a small pool of OS
worker lanes. The only mutable state shared between threads is distance
cells (atomic min), worklist cursors (atomic add), and dedup flags (atomic
test-and-set); everything else is thread-private, which is what makes the
shipped kernels confluent: any schedule reaches the same fixpoint.

Deterministic replay runs the thread ids in ascending order on one lane and
must produce results identical to parallel execution. A schedule seed
instead permutes the execution order, which is how schedule-independence is
exercised in tests.
"""

from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field
from math import sqrt
from typing import Callable

from .worklist import WorklistOverflow

INF = (1 << 63) - 1
MAX_DEFAULT_THREADS = 1 << 14


class KernelLaunchError(RuntimeError):
    """A kernel body failed; carries the offending virtual thread id."""

    def __init__(self, thread_id: int, cause: BaseException):
        super().__init__(f"kernel body failed on virtual thread {thread_id}: {cause!r}")
        self.thread_id = thread_id


@dataclass
class KernelConfig:
    """Launch configuration for the virtual thread grid.

    ``virtual_threads`` of None lets each launch size itself from the active
    item count (rounded up to whole blocks, capped at 2**14). ``workers`` is
    the number of OS-level lanes the virtual threads are multiplexed onto.
    """

    virtual_threads: int | None = None
    block_size: int = 1024
    workers: int = 1
    deterministic_replay: bool = False
    schedule_seed: int | None = None

    def __post_init__(self):
        if self.virtual_threads is not None and self.virtual_threads < 1:
            raise ValueError("virtual_threads must be >= 1")
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def resolve_threads(cfg: KernelConfig, active_items: int) -> int:
    """Virtual thread count for a launch over ``active_items`` work items."""
    if cfg.virtual_threads is not None:
        return cfg.virtual_threads
    if active_items < 1:
        active_items = 1
    blocks = -(-active_items // cfg.block_size)
    return min(MAX_DEFAULT_THREADS, blocks * cfg.block_size)


class ThreadCtx:
    """Per-lane scratch carried through a kernel body.

    ``work`` counts edge relaxations attempted by the current virtual thread;
    the atomic helpers bump ``relax_ops`` and ``push_ops`` so per-invocation
    totals come for free without shared counters.
    """

    __slots__ = ("tid", "work", "relax_ops", "push_ops")

    def __init__(self):
        self.tid = -1
        self.work = 0
        self.relax_ops = 0
        self.push_ops = 0


class DistArray:
    """Distance cells with an INF sentinel; values only ever decrease."""

    __slots__ = ("values", "lock")

    def __init__(self, num_nodes: int, source: int | None = None):
        self.values: list[int] = [INF] * num_nodes
        self.lock = threading.Lock()
        if source is not None:
            if not 0 <= source < num_nodes:
                raise IndexError(f"source {source} out of range for {num_nodes} nodes")
            self.values[source] = 0

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, node: int) -> int:
        return self.values[node]

    def __eq__(self, other) -> bool:
        if isinstance(other, DistArray):
            return self.values == other.values
        if isinstance(other, list):
            return self.values == other
        return NotImplemented

    def to_list(self) -> list[int]:
        return list(self.values)


def atomic_relax_min(dist: DistArray, node: int, candidate: int, ctx: ThreadCtx | None = None) -> bool:
    """Atomically lower dist[node] to ``candidate``; True iff it strictly decreased.

    The lock-free pre-check is sound because cells are monotone decreasing:
    once the candidate is no better than the current value it never will be.
    """
    if candidate < 0:
        raise ValueError(f"candidate distance must be nonnegative, got {candidate}")
    values = dist.values
    if node < 0 or node >= len(values):
        raise IndexError(f"node {node} out of range for {len(values)} cells")
    if ctx is not None:
        ctx.relax_ops += 1
    if candidate >= values[node]:
        return False
    with dist.lock:
        if candidate < values[node]:
            values[node] = candidate
            return True
    return False


@dataclass
class MetricsRecord:
    """Counters for one kernel invocation, used for imbalance analysis."""

    iteration: int
    strategy: str
    active_items: int
    per_thread_work: list[int]
    atomic_relax_ops: int
    atomic_push_ops: int
    kernel_wall_time: float
    overhead_wall_time: float = 0.0
    sub_iteration: int | None = None

    @property
    def threads(self) -> int:
        return len(self.per_thread_work)

    def work_total(self) -> int:
        return sum(self.per_thread_work)

    def work_max(self) -> int:
        return max(self.per_thread_work) if self.per_thread_work else 0

    def work_avg(self) -> float:
        return self.work_total() / len(self.per_thread_work) if self.per_thread_work else 0.0

    def work_stddev(self) -> float:
        n = len(self.per_thread_work)
        if n == 0:
            return 0.0
        avg = self.work_total() / n
        return sqrt(sum((w - avg) ** 2 for w in self.per_thread_work) / n)


def _lane_chunks(order, lanes: int) -> list[list[int]]:
    n = len(order)
    base, extra = divmod(n, lanes)
    chunks = []
    start = 0
    for lane in range(lanes):
        size = base + (1 if lane < extra else 0)
        chunks.append(order[start : start + size])
        start += size
    return [c for c in chunks if c]


def launch_kernel(
    cfg: KernelConfig,
    body: Callable[[int, ThreadCtx], None],
    threads: int,
    *,
    strategy: str = "",
    iteration: int = 0,
    sub_iteration: int | None = None,
    active_items: int = 0,
) -> MetricsRecord:
    """Run ``body(tid, ctx)`` once for each virtual thread id in [0, threads).

    Returns the populated metrics record. WorklistOverflow raised by a body
    aborts the whole invocation and propagates so the caller can regrow and
    retry; any other body failure is wrapped in KernelLaunchError carrying
    the offending thread id.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    per_work = [0] * threads
    replay = cfg.deterministic_replay

    order: list[int] | range = range(threads)
    if cfg.schedule_seed is not None and not replay:
        salt = f"{cfg.schedule_seed}|{strategy}|{iteration}|{sub_iteration}"
        shuffled = list(range(threads))
        random.Random(salt).shuffle(shuffled)
        order = shuffled

    lanes = 1 if replay else cfg.workers
    relax_ops = 0
    push_ops = 0
    t0 = time.perf_counter()
    if lanes == 1:
        ctx = ThreadCtx()
        try:
            for tid in order:
                ctx.tid = tid
                ctx.work = 0
                body(tid, ctx)
                per_work[tid] = ctx.work
        except WorklistOverflow:
            raise
        except Exception as exc:
            raise KernelLaunchError(ctx.tid, exc) from exc
        relax_ops, push_ops = ctx.relax_ops, ctx.push_ops
    else:
        chunks = _lane_chunks(list(order), lanes)
        ctxs = [ThreadCtx() for _ in chunks]
        failures: list[tuple[int, BaseException]] = []
        stop = threading.Event()

        def run_lane(tids: list[int], ctx: ThreadCtx) -> None:
            try:
                for tid in tids:
                    if stop.is_set():
                        return
                    ctx.tid = tid
                    ctx.work = 0
                    body(tid, ctx)
                    per_work[tid] = ctx.work
            except BaseException as exc:
                failures.append((ctx.tid, exc))
                stop.set()

        lanes_threads = [
            threading.Thread(target=run_lane, args=(tids, ctx), daemon=True)
            for tids, ctx in zip(chunks, ctxs)
        ]
        for t in lanes_threads:
            t.start()
        for t in lanes_threads:
            t.join()
        if failures:
            tid, exc = failures[0]
            if isinstance(exc, WorklistOverflow):
                raise exc
            raise KernelLaunchError(tid, exc) from exc
        relax_ops = sum(c.relax_ops for c in ctxs)
        push_ops = sum(c.push_ops for c in ctxs)
    wall = time.perf_counter() - t0

    return MetricsRecord(
        iteration=iteration,
        strategy=strategy,
        active_items=active_items,
        per_thread_work=per_work,
        atomic_relax_ops=relax_ops,
        atomic_push_ops=push_ops,
        kernel_wall_time=wall,
        sub_iteration=sub_iteration,
    )
