"""graph6 and plain edge-list reading/writing."""

from __future__ import annotations

import re
from typing import IO, Iterable, Iterator

from cyclepack.graph import Graph, build_graph


class MalformedGraph6(ValueError):
    pass


class MalformedEdgeList(ValueError):
    pass


_HEADER = b">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126]) + bytes(((n >> s) & 63) + 63 for s in (12, 6, 0))
    if n < 1 << 36:
        return bytes([126, 126]) + bytes(((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def graph6_encode(g: Graph) -> bytes:
    n = g.n
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5])
        for k in range(0, len(bits), 6)
    )
    return _encode_size(n) + body


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if not data:
        raise MalformedGraph6("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise MalformedGraph6("byte outside the graph6 range 63..126")
    vals = [c - 63 for c in data]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise MalformedGraph6("truncated 8-byte size field")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        pos = 8
    else:
        if len(vals) < 4:
            raise MalformedGraph6("truncated 4-byte size field")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        pos = 4
    nbits = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (nbits + 5) // 6:
        raise MalformedGraph6(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    for k in range(nbits, len(body) * 6):
        if body[k // 6] >> (5 - k % 6) & 1:
            raise MalformedGraph6("nonzero padding bits")
    return build_graph(n, edges)


def edgelist_encode(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


_PAIR = re.compile(r"^\s*(\d+)\s+(\d+)\s*$")


def _read_edgelist(header: str, lines: Iterator[str]) -> Graph:
    m = _PAIR.match(header)
    if not m:
        raise MalformedEdgeList(f"bad edge-list header {header!r}")
    n, count = int(m.group(1)), int(m.group(2))
    edges = []
    for _ in range(count):
        try:
            line = next(lines)
        except StopIteration:
            raise MalformedEdgeList(f"expected {count} edges, got {len(edges)}") from None
        pm = _PAIR.match(line)
        if not pm:
            raise MalformedEdgeList(f"bad edge line {line!r}")
        edges.append((int(pm.group(1)), int(pm.group(2))))
    return build_graph(n, edges)


def edgelist_decode(text: str) -> Graph:
    lines = iter([ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")])
    try:
        header = next(lines)
    except StopIteration:
        raise MalformedEdgeList("empty edge list") from None
    return _read_edgelist(header, lines)


def is_edgelist_header(line: str) -> bool:
    # graph6 bytes are all >= 63, so a line of two integers can only be an edge-list header
    return bool(_PAIR.match(line))


def iter_graphs(lines: Iterable[str]) -> Iterator[Graph]:
    """Graphs from a text stream holding graph6 lines and/or edge-list blocks."""
    it = iter(ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#"))
    for line in it:
        if is_edgelist_header(line):
            yield _read_edgelist(line, it)
        else:
            yield graph6_decode(line.strip())


def read_graphs(stream: IO[str]) -> list[Graph]:
    return list(iter_graphs(stream))


def read_graph(text: str) -> Graph:
    graphs = list(iter_graphs(text.splitlines()))
    if len(graphs) != 1:
        raise ValueError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0]
