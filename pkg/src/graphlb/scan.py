"""Inclusive prefix sum with a block-parallel structure.

The scan is computed the way a data-parallel runtime would: independent
block-local scans, an exclusive scan of the block totals, then a carry pass
that offsets every block. Integer addition is associative, so the result is
bit-exact against the sequential fold for any block split or worker count.
"""

from __future__ import annotations

import threading
from typing import Sequence

INT64_MAX = (1 << 63) - 1

_BLOCK = 4096


def inclusive_scan(values: Sequence[int], workers: int = 1) -> list[int]:
    """Running sums: out[i] == values[0] + ... + values[i].

    Raises OverflowError when a prefix leaves the signed 64-bit range the
    engine's counters live in.
    """
    n = len(values)
    out = [0] * n
    if n == 0:
        return out
    starts = list(range(0, n, _BLOCK))

    def scan_block(s: int) -> None:
        e = min(s + _BLOCK, n)
        acc = 0
        for i in range(s, e):
            acc += int(values[i])
            out[i] = acc

    if workers > 1 and len(starts) > 1:
        lanes = []
        for lane in range(workers):
            mine = starts[lane::workers]
            if not mine:
                continue
            t = threading.Thread(target=lambda ss=mine: [scan_block(s) for s in ss], daemon=True)
            lanes.append(t)
        for t in lanes:
            t.start()
        for t in lanes:
            t.join()
    else:
        for s in starts:
            scan_block(s)

    # Exclusive scan of the block totals, then offset each block by its carry.
    carry = 0
    for s in starts:
        e = min(s + _BLOCK, n)
        block_total = out[e - 1]
        if carry:
            for i in range(s, e):
                out[i] += carry
        carry += block_total
        if not -INT64_MAX - 1 <= carry <= INT64_MAX:
            raise OverflowError("prefix sum exceeds the 64-bit counter range")
    return out
