"""Graph file loaders and the binary CSR cache format."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .csr import INDEX_DTYPE, CsrGraph

BIN_MAGIC = b"CSRG"
BIN_VERSION = 1


class ParseError(ValueError):
    """Malformed graph file; the message carries the file path and line number."""

    def __init__(self, path, line_no: int | None, message: str):
        loc = f"{path}" if line_no is None else f"{path}:{line_no}"
        super().__init__(f"{loc}: {message}")
        self.path = str(path)
        self.line_no = line_no


def load_dimacs_gr(path) -> CsrGraph:
    """Load a 9th-DIMACS-challenge shortest-path `.gr` file.

    Grammar: optional `c` comment lines, one `p sp <nodes> <arcs>` problem
    line, then `a <src> <dst> <weight>` arc lines with 1-based node ids.
    Ids are shifted to 0-based and arcs keep their file order per source.
    """
    num_nodes = num_arcs = None
    srcs: list[int] = []
    dsts: list[int] = []
    wts: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            tokens = line.split()
            kind = tokens[0]
            if kind == "p":
                if num_nodes is not None:
                    raise ParseError(path, line_no, "duplicate problem line")
                if len(tokens) != 4 or tokens[1] != "sp":
                    raise ParseError(path, line_no, f"malformed problem line {line!r}")
                try:
                    num_nodes, num_arcs = int(tokens[2]), int(tokens[3])
                except ValueError:
                    raise ParseError(path, line_no, "non-integer node/arc count") from None
                if num_nodes < 0 or num_arcs < 0:
                    raise ParseError(path, line_no, "negative node/arc count")
            elif kind == "a":
                if num_nodes is None:
                    raise ParseError(path, line_no, "arc line before problem line")
                if len(tokens) != 4:
                    raise ParseError(path, line_no, f"malformed arc line {line!r}")
                try:
                    u, v, w = int(tokens[1]), int(tokens[2]), int(tokens[3])
                except ValueError:
                    raise ParseError(path, line_no, "non-integer arc token") from None
                if not 1 <= u <= num_nodes:
                    raise ParseError(path, line_no, f"node id {u} out of range")
                if not 1 <= v <= num_nodes:
                    raise ParseError(path, line_no, f"node id {v} out of range")
                if w < 0:
                    raise ParseError(path, line_no, f"negative weight {w}")
                srcs.append(u - 1)
                dsts.append(v - 1)
                wts.append(w)
            else:
                raise ParseError(path, line_no, f"unknown line type {kind!r}")
    if num_nodes is None:
        raise ParseError(path, None, "missing problem line")
    if len(srcs) != num_arcs:
        raise ParseError(
            path, None, f"arc count mismatch: header says {num_arcs}, file has {len(srcs)}"
        )
    return CsrGraph.from_edges(num_nodes, srcs, dsts, wts)


def load_edge_list(path, weighted: bool = False) -> CsrGraph:
    """Load whitespace-separated `u v [w]` lines; `#` starts a comment.

    Node count is max id + 1. With ``weighted`` false the weight column is
    ignored entirely and the graph carries no weights.
    """
    srcs: list[int] = []
    dsts: list[int] = []
    wts: list[int] = []
    max_id = -1
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if len(tokens) < 2:
                raise ParseError(path, line_no, f"expected `u v [w]`, got {line!r}")
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(path, line_no, "non-integer node token") from None
            if u < 0 or v < 0:
                raise ParseError(path, line_no, "negative node id")
            if weighted:
                if len(tokens) < 3:
                    raise ParseError(path, line_no, "missing weight")
                try:
                    w = int(tokens[2])
                except ValueError:
                    raise ParseError(path, line_no, "non-integer weight token") from None
                if w < 0:
                    raise ParseError(path, line_no, f"negative weight {w}")
                wts.append(w)
            srcs.append(u)
            dsts.append(v)
            max_id = max(max_id, u, v)
    num_nodes = max_id + 1
    return CsrGraph.from_edges(num_nodes, srcs, dsts, wts if weighted else None)


def write_csr_bin(g: CsrGraph, path) -> None:
    """Write the binary CSR cache: magic, version u32, N u64, E u64, then
    row_offsets, col_indices, a weights flag byte and weights, little-endian
    64-bit array elements throughout."""
    with open(path, "wb") as fh:
        fh.write(BIN_MAGIC)
        fh.write(struct.pack("<I", BIN_VERSION))
        fh.write(struct.pack("<QQ", g.num_nodes, g.num_edges))
        fh.write(g.row_offsets.astype("<i8").tobytes())
        fh.write(g.col_indices.astype("<i8").tobytes())
        if g.weights is None:
            fh.write(struct.pack("<B", 0))
        else:
            fh.write(struct.pack("<B", 1))
            fh.write(g.weights.astype("<i8").tobytes())


def read_csr_bin(path) -> CsrGraph:
    """Read the binary CSR cache written by :func:`write_csr_bin`."""
    data = Path(path).read_bytes()
    if data[:4] != BIN_MAGIC:
        raise ParseError(path, None, "bad magic, not a CSR cache file")
    (version,) = struct.unpack_from("<I", data, 4)
    if version != BIN_VERSION:
        raise ParseError(path, None, f"unsupported cache version {version}")
    n, m = struct.unpack_from("<QQ", data, 8)
    off = 24
    expect = (n + 1) * 8
    rows = np.frombuffer(data, dtype="<i8", count=n + 1, offset=off)
    off += expect
    cols = np.frombuffer(data, dtype="<i8", count=m, offset=off)
    off += m * 8
    if off >= len(data):
        raise ParseError(path, None, "truncated cache file")
    flag = data[off]
    off += 1
    weights = None
    if flag:
        weights = np.frombuffer(data, dtype="<i8", count=m, offset=off)
        off += m * 8
    return CsrGraph(
        int(n),
        int(m),
        rows.astype(INDEX_DTYPE),
        cols.astype(INDEX_DTYPE),
        None if weights is None else weights.astype(INDEX_DTYPE),
    )
