"""Named graph families with straight-line plane embeddings."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping

from .errors import GraphError
from .graph import Graph
from .plane import PlaneGraph, face_vertices, trace_faces

Point2 = tuple[float, float]
Point3 = tuple[float, float, float]


def _signed_area(walk: list[int], pos: Mapping[int, Point2]) -> float:
    total = 0.0
    for a, b in zip(walk, walk[1:] + walk[:1]):
        (x1, y1), (x2, y2) = pos[a], pos[b]
        total += x1 * y2 - x2 * y1
    return total / 2


def embed_straight_line(pos: Mapping[int, Point2], edges: Iterable[tuple[int, int]]) -> PlaneGraph:
    """Rotation system of a straight-line drawing; neighbours sorted by angle.

    The outer face of each component is the face of largest absolute signed
    area, which for a crossing-free drawing is the unbounded one.
    """
    adj: dict[int, list[int]] = {v: [] for v in pos}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    rotation = {}
    for v, nbrs in adj.items():
        x0, y0 = pos[v]
        rotation[v] = sorted(nbrs, key=lambda w: math.atan2(pos[w][1] - y0, pos[w][0] - x0))
    walks = []
    seen: set[int] = set()
    faces = trace_faces(rotation)
    for face in sorted(faces, key=lambda f: -abs(_signed_area(face_vertices(f), pos))):
        walk = face_vertices(face)
        comp = _component_of(rotation, walk[0])
        if comp & seen:
            continue
        seen |= comp
        walks.append(walk)
    return PlaneGraph(rotation, walks or None)


def _component_of(rotation, v) -> set[int]:
    comp = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in rotation[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    return comp


def _circle(n: int, radius: float = 1.0, offset: int = 0) -> dict[int, Point2]:
    return {
        offset + i: (radius * math.cos(2 * math.pi * i / n), radius * math.sin(2 * math.pi * i / n))
        for i in range(n)
    }


def cycle(n: int) -> PlaneGraph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return embed_straight_line(_circle(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> PlaneGraph:
    if n < 1:
        raise GraphError("a path needs at least 1 vertex")
    return embed_straight_line({i: (float(i), 0.0) for i in range(n)}, [(i, i + 1) for i in range(n - 1)])


def wheel(n: int) -> PlaneGraph:
    """``n`` rim vertices ``0..n-1`` around a hub ``n``."""
    if n < 3:
        raise GraphError("a wheel needs at least 3 rim vertices")
    pos = _circle(n)
    pos[n] = (0.0, 0.0)
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return embed_straight_line(pos, edges)


def star(n: int) -> PlaneGraph:
    """Centre ``0`` with leaves ``1..n``."""
    pos = {i + 1: p for i, p in _circle(n).items()} if n else {}
    pos[0] = (0.0, 0.0)
    return embed_straight_line(pos, [(0, i) for i in range(1, n + 1)])


def complete(n: int) -> PlaneGraph:
    """Plane ``K_n`` for ``n <= 4``; ``K_4`` is drawn as a triangle around vertex 3."""
    if n > 4:
        raise GraphError(f"K{n} is not planar")
    if n == 4:
        pos = _circle(3)
        pos[3] = (0.0, 0.0)
    else:
        pos = _circle(n) if n > 1 else {0: (0.0, 0.0)} if n == 1 else {}
    return embed_straight_line(pos, itertools.combinations(range(n), 2))


def complete_graph(n: int) -> Graph:
    return Graph(range(n), itertools.combinations(range(n), 2))


def grid(m: int, n: int) -> PlaneGraph:
    """``m`` by ``n`` grid; vertex ``i*n + j`` sits at ``(j, i)``."""
    pos = {i * n + j: (float(j), float(i)) for i in range(m) for j in range(n)}
    edges = [(i * n + j, i * n + j + 1) for i in range(m) for j in range(n - 1)]
    edges += [(i * n + j, (i + 1) * n + j) for i in range(m - 1) for j in range(n)]
    return embed_straight_line(pos, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


# -- polyhedra ---------------------------------------------------------------


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def embed_convex_polyhedron(points: list[Point3], edge_length: float) -> PlaneGraph:
    """Rotation system of a convex polyhedron centred at the origin.

    Neighbours are sorted by angle in the tangent plane, seen from outside,
    which orients every vertex consistently.
    """
    pts = sorted(points)
    ids = range(len(pts))
    edges = [
        (i, j)
        for i, j in itertools.combinations(ids, 2)
        if abs(math.dist(pts[i], pts[j]) - edge_length) < 1e-6
    ]
    adj: dict[int, list[int]] = {i: [] for i in ids}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    rotation = {}
    for v in ids:
        normal = pts[v]
        ref = _sub(pts[adj[v][0]], pts[v])
        e1 = _sub(ref, tuple(_dot(ref, normal) / _dot(normal, normal) * c for c in normal))
        e2 = _cross(normal, e1)

        def angle(w, v=v, e1=e1, e2=e2):
            d = _sub(pts[w], pts[v])
            return math.atan2(_dot(d, e2), _dot(d, e1))

        rotation[v] = sorted(adj[v], key=angle)
    return PlaneGraph(rotation)


_PHI = (1 + math.sqrt(5)) / 2


def icosahedron() -> PlaneGraph:
    pts = []
    for a, b in itertools.product((-1.0, 1.0), repeat=2):
        pts += [(0.0, a, b * _PHI), (a, b * _PHI, 0.0), (b * _PHI, 0.0, a)]
    return embed_convex_polyhedron(pts, 2.0)


def dodecahedron() -> PlaneGraph:
    pts = [tuple(p) for p in itertools.product((-1.0, 1.0), repeat=3)]
    for a, b in itertools.product((-1.0, 1.0), repeat=2):
        pts += [(0.0, a / _PHI, b * _PHI), (a / _PHI, b * _PHI, 0.0), (b * _PHI, 0.0, a / _PHI)]
    return embed_convex_polyhedron(pts, 2 / _PHI)


NAMED_FAMILIES = {
    "cycle": cycle,
    "path": path,
    "wheel": wheel,
    "star": star,
    "complete": complete,
    "grid": grid,
    "icosahedron": icosahedron,
    "dodecahedron": dodecahedron,
}


def named(name: str) -> PlaneGraph:
    """Parse names such as ``c5``, ``cycle(5)``, ``w6``, ``k4``, ``grid(2,3)``, ``icosahedron``."""
    text = name.strip().lower().replace(" ", "")
    if text in ("icosahedron", "dodecahedron"):
        return NAMED_FAMILIES[text]()
    short = {"c": "cycle", "p": "path", "w": "wheel", "k": "complete", "s": "star"}
    if "(" in text and text.endswith(")"):
        family, args = text[:-1].split("(", 1)
        params = [int(x) for x in args.split(",") if x]
    else:
        head = text.rstrip("0123456789")
        tail = text[len(head):]
        if not tail:
            raise GraphError(f"unknown graph name {name!r}")
        family, params = head, [int(tail)]
    family = short.get(family, family)
    if family not in NAMED_FAMILIES or family in ("icosahedron", "dodecahedron"):
        raise GraphError(f"unknown graph name {name!r}")
    try:
        return NAMED_FAMILIES[family](*params)
    except TypeError:
        raise GraphError(f"wrong number of parameters in {name!r}") from None
