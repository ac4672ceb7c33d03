"""graph6 encoding and decoding for small simple graphs."""

from __future__ import annotations

from .errors import GraphError
from .graph import Graph

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at character {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 36-bit vertex count", len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 18-bit vertex count", len(data))
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(text: str, *, max_vertices: int | None = None) -> Graph:
    """Decode one graph6 line; vertices are ``0..n-1``."""
    line = text.strip()
    if line.startswith(HEADER):
        line = line[len(HEADER):]
    try:
        data = line.encode("ascii")
    except UnicodeEncodeError:
        raise Graph6Error("non-ASCII character") from None
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the graph6 range 63..126", i)
    n, offset = _decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[offset:]
    if len(body) != need:
        raise Graph6Error(
            f"expected {need} adjacency bytes for n={n}, found {len(body)}", offset + min(len(body), need)
        )
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[bit // 6] - 63
            if (byte >> (5 - bit % 6)) & 1:
                edges.append((i, j))
            bit += 1
    kwargs = {} if max_vertices is None else {"max_vertices": max_vertices}
    return Graph(range(n), edges, **kwargs)


def encode_graph6(g: Graph) -> str:
    """Encode ``g``; vertex ids are relabelled ``0..n-1`` in sorted order."""
    order = {v: i for i, v in enumerate(g.vertices)}
    n = len(order)
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(g.vertices[i], g.vertices[j]) else 0)
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")
