"""Shared worklists with chunked atomic appends and post-kernel condensing.

A worklist is an append-only array of work items (node ids or edge indices)
published to the next kernel invocation. Appends reserve slots by bumping a
single cursor under a lock, emulating an atomic add; work chunking reserves
a whole contiguous run with one such reservation instead of one per item.
Capacity never changes while a kernel is running: an overflow aborts the
invocation and the caller regrows the list and retries the iteration.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence


class WorklistOverflow(RuntimeError):
    """A reservation did not fit; the invocation must be aborted and retried."""

    def __init__(self, required: int, capacity: int):
        super().__init__(f"worklist overflow: need {required} slots, capacity {capacity}")
        self.required = required
        self.capacity = capacity


class Worklist:
    """Append-only list with an atomic cursor and optional per-node dedup flags.

    With ``dedup_domain`` set, pushes of node ids are filtered through a
    test-and-set flag array so an id appears at most once per kernel; the
    flags are cleared together with the items on :meth:`clear`.
    """

    __slots__ = ("items", "capacity", "flags", "_size", "_lock")

    def __init__(self, capacity: int, dedup_domain: int | None = None):
        if capacity < 0:
            raise ValueError("capacity must be nonnegative")
        self.items: list[int] = [0] * capacity
        self.capacity = capacity
        self.flags = bytearray(dedup_domain) if dedup_domain else None
        self._size = 0
        self._lock = threading.Lock()

    @classmethod
    def from_items(cls, values: Sequence[int], dedup_domain: int | None = None) -> "Worklist":
        wl = cls(len(values), dedup_domain)
        for i, v in enumerate(values):
            wl.items[i] = v
            if wl.flags is not None:
                wl.flags[v] = 1
        wl._size = len(values)
        return wl

    @property
    def size(self) -> int:
        return self._size

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterable[int]:
        return iter(self.items[: self._size])

    def live(self) -> list[int]:
        return self.items[: self._size]

    def clear(self) -> None:
        """Reset the cursor and drop the dedup flags of the held items."""
        if self.flags is not None:
            flags = self.flags
            items = self.items
            for i in range(self._size):
                flags[items[i]] = 0
        self._size = 0

    def grow(self, new_capacity: int) -> None:
        """Extend capacity; only legal between kernel invocations."""
        if new_capacity > self.capacity:
            self.items.extend([0] * (new_capacity - self.capacity))
            self.capacity = new_capacity


def wl_push_chunk(wl: Worklist, run: Sequence[int], ctx=None) -> int:
    """Append a contiguous run of items with a single cursor reservation.

    Returns the start index of the reserved slots. An empty run performs no
    reservation and leaves the cursor untouched.
    """
    n = len(run)
    if n == 0:
        return wl._size
    with wl._lock:
        start = wl._size
        end = start + n
        if end > wl.capacity:
            raise WorklistOverflow(end, wl.capacity)
        wl._size = end
    # The reserved slots are exclusively owned; copying can happen outside
    # the lock, and the end-of-kernel barrier publishes them to readers.
    wl.items[start:end] = run
    if ctx is not None:
        ctx.push_ops += 1
    return start


def wl_push_node(wl: Worklist, node: int, ctx=None) -> bool:
    """Append one node id, suppressed if its dedup flag is already set.

    Returns True when the node was actually appended.
    """
    flags = wl.flags
    if flags is not None and flags[node]:
        return False
    with wl._lock:
        if flags is not None:
            if flags[node]:
                return False
            flags[node] = 1
        start = wl._size
        if start >= wl.capacity:
            if flags is not None:
                flags[node] = 0
            raise WorklistOverflow(start + 1, wl.capacity)
        self_items = wl.items
        self_items[start] = node
        wl._size = start + 1
    if ctx is not None:
        ctx.push_ops += 1
    return True


def wl_condense(wl: Worklist) -> Worklist:
    """Drop duplicate items in place, keeping first occurrences in order.

    Run between kernels to bound worklists that received redundant pushes,
    e.g. when several threads re-add the same destination's edges.
    """
    seen: set[int] = set()
    items = wl.items
    write = 0
    for i in range(wl._size):
        v = items[i]
        if v not in seen:
            seen.add(v)
            items[write] = v
            write += 1
    wl._size = write
    return wl
