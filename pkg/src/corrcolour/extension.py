"""Constructive precolouring extension for plane graphs.

``extend_5cc`` follows Thomassen's inductive argument. The instance is split
into components and then blocks. Each 2-connected block has its interior
faces star-subdivided so that it becomes a near-triangulation, and the
recursion runs on its outer cycle ``c0 c1 ... c(k-1)``, where ``c0`` and
``c1`` are already coloured:

* if the cycle has a chord, solve the side containing ``c0 c1`` first and
  then the other side, whose precoloured edge is the chord;
* otherwise ``v = c(k-1)`` keeps two colours not blocked by ``c0``, those two
  colours are struck (through the matchings) from the lists of the interior
  neighbours of ``v``, the rest is solved with ``v`` deleted, and finally
  ``v`` takes whichever of its two colours ``c(k-2)`` leaves free.

Any inconsistency in that construction falls back to exhaustive search,
which is authoritative; the returned colouring is always re-validated.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .correspondence import (
    CorrespondenceAssignment,
    PartialColouring,
    is_valid_colouring,
    validate,
)
from .counting import find_colouring
from .errors import PreconditionViolation, TheoremFalsified
from .graph import Graph, SubgraphRef, _as_subgraph, biconnected_components, edge_key, girth, is_independent
from .plane import PlaneGraph

STRATEGIES = ("auto", "recursive", "search")


class _Fallback(Exception):
    """The recursive construction hit a configuration it does not handle."""


# -- preconditions -----------------------------------------------------------


def _common_checks(pg: PlaneGraph, a: CorrespondenceAssignment, s, phi) -> SubgraphRef:
    g = pg.graph
    problems = validate(g, a)
    if problems:
        raise PreconditionViolation("invalid assignment: " + "; ".join(p.message for p in problems))
    s = _as_subgraph(g, s)
    if set(phi) != set(s.vertex_subset):
        raise PreconditionViolation("phi must colour exactly the vertices of s")
    if not is_valid_colouring(g.induced(s.vertex_subset), a, phi):
        raise PreconditionViolation("phi is not a valid colouring of s")
    outer = pg.outer_vertices()
    off = sorted(set(s.vertex_subset) - outer)
    if off:
        raise PreconditionViolation(f"s has vertices {off} off the outer walk")
    off_edges = sorted(s.edge_subset - pg.outer_edges())
    if off_edges:
        raise PreconditionViolation(f"s has edges {off_edges} off the outer walk")
    return s


def check_5cc_preconditions(pg: PlaneGraph, a: CorrespondenceAssignment, s, phi) -> SubgraphRef:
    """Raise ``PreconditionViolation`` unless the 5-list extension hypotheses hold.

    ``s`` must be a path on at most two vertices lying in the outer walk;
    the other outer-walk vertices need lists of size at least 3 and every
    remaining vertex a list of size at least 5.
    """
    s = _common_checks(pg, a, s, phi)
    if s.v > 2:
        raise PreconditionViolation(f"s has {s.v} vertices; at most 2 allowed")
    if s.v == 2 and s.e != 1:
        raise PreconditionViolation("s on two vertices must be an edge")
    outer = pg.outer_vertices()
    for v in pg.graph.vertices:
        if v in s.vertex_subset:
            continue
        need = 3 if v in outer else 5
        if len(a.lists[v]) < need:
            where = "outer-walk" if v in outer else "interior"
            raise PreconditionViolation(f"{where} vertex {v} has a list of size {len(a.lists[v])} < {need}")
    return s


def check_3cc_preconditions(
    pg: PlaneGraph, a: CorrespondenceAssignment, s, independent2: Iterable[int], phi
) -> tuple[SubgraphRef, frozenset[int]]:
    """Raise ``PreconditionViolation`` unless the girth-five extension hypotheses hold."""
    g = pg.graph
    if girth(g) < 5:
        raise PreconditionViolation(f"girth {girth(g)} is below 5")
    s = _common_checks(pg, a, s, phi)
    if s.v > 6:
        raise PreconditionViolation(f"s has {s.v} vertices; at most 6 allowed")
    if s.v:
        sg = s.as_graph()
        degs = [sg.degree(v) for v in sg.vertices]
        is_path = sg.is_connected() and s.e == s.v - 1 and max(degs, default=0) <= 2
        is_cycle = sg.is_connected() and s.e == s.v and all(d == 2 for d in degs)
        if not (is_path or is_cycle):
            raise PreconditionViolation("s must be a path or a cycle")
    ind = frozenset(independent2)
    outer = pg.outer_vertices()
    if not ind <= outer - s.vertex_subset:
        raise PreconditionViolation("independent2 must lie in the outer walk and outside s")
    if not is_independent(g, ind):
        raise PreconditionViolation("independent2 is not an independent set")
    for v in ind:
        if g.neighbours(v) & s.vertex_subset:
            raise PreconditionViolation(f"vertex {v} of independent2 has a neighbour in s")
    for v in g.vertices:
        if v in s.vertex_subset:
            continue
        need = 2 if v in ind else 3
        if len(a.lists[v]) < need:
            raise PreconditionViolation(f"vertex {v} has a list of size {len(a.lists[v])} < {need}")
    return s, ind


# -- the recursive construction ---------------------------------------------


class _Solver:
    def __init__(self, g: Graph, a: CorrespondenceAssignment, phi: Mapping[int, int]):
        self.g = g
        self.col: dict[int, int] = dict(phi)
        self.lists: dict[int, set[int]] = {v: set(a.lists[v]) for v in g.vertices}
        self.mate: dict[tuple[int, int, int], int] = {}
        for (u, w), pairs in a.matchings.items():
            for cu, cw in pairs:
                self.mate[(u, cu, w)] = cw
                self.mate[(w, cw, u)] = cu
        self.next_id = max(g.vertices, default=-1) + 1

    def ok(self, v: int, c: int) -> bool:
        if v not in self.g:
            return True
        return all(
            self.mate.get((w, self.col[w], v)) != c for w in self.g.neighbours(v) if w in self.col
        )

    def colour_any(self, v: int) -> None:
        for c in sorted(self.lists[v]):
            if self.ok(v, c):
                self.col[v] = c
                return
        raise _Fallback(f"no free colour at {v}")

    # components and blocks

    def run(self, pg: PlaneGraph) -> None:
        for comp in pg.graph.components():
            if len(comp) == 1:
                if comp[0] not in self.col:
                    self.colour_any(comp[0])
                continue
            self.component(pg.restrict(comp))

    def component(self, sub: PlaneGraph) -> None:
        walk_darts = sub.outer_faces[0]
        pre = [v for v in sub.graph.vertices if v in self.col]
        if not pre:
            v0 = walk_darts[0][0]
            self.colour_any(v0)
            pre = [v0]
        if len(pre) == 1:
            v = pre[0]
            w = next(d[1] for d in walk_darts if d[0] == v)
            self.colour_any(w)
            pre = [v, w]
        x, y = pre
        blocks = [set(b) for b in biconnected_components(sub.graph)]
        root = next(i for i, b in enumerate(blocks) if edge_key(x, y) in b)
        done_vertices: set[int] = set()
        order = [root]
        pending = [i for i in range(len(blocks)) if i != root]
        while order:
            i = order.pop(0)
            bedges = blocks[i]
            bverts = {z for e in bedges for z in e}
            self.block(sub, bedges, bverts)
            done_vertices |= bverts
            attach = [j for j in pending if {z for e in blocks[j] for z in e} & done_vertices]
            for j in attach:
                pending.remove(j)
                order.append(j)
        if pending:
            raise _Fallback("block tree traversal incomplete")

    def block(self, sub: PlaneGraph, bedges: set, bverts: set[int]) -> None:
        coloured = [v for v in sorted(bverts) if v in self.col]
        if len(bedges) == 1:
            if len(coloured) == 2:
                return
            if len(coloured) != 1:
                raise _Fallback("bridge block without a coloured end")
            (other,) = bverts - set(coloured)
            self.colour_any(other)
            return
        bpg = sub.edge_subgraph(bedges)
        cycle = bpg.outer_face
        if len(cycle) != len(set(cycle)) or set(cycle) - bverts:
            raise _Fallback("block outer walk is not a cycle")
        if len(coloured) == 1:
            z = coloured[0]
            nxt = cycle[(cycle.index(z) + 1) % len(cycle)]
            self.colour_any(nxt)
            coloured = [z, nxt]
        if len(coloured) != 2:
            raise _Fallback("block does not have exactly two coloured vertices")
        n = len(cycle)
        start = None
        for i in range(n):
            if {cycle[i], cycle[(i + 1) % n]} == set(coloured):
                start = i
        if start is None:
            raise _Fallback("coloured pair is not an outer edge of its block")
        cycle = cycle[start:] + cycle[:start]
        rot = self.triangulate(bpg)
        self.near_triangulation(rot, cycle)

    def triangulate(self, bpg: PlaneGraph) -> dict[int, list[int]]:
        rot = {v: list(r) for v, r in bpg.rotation.items()}
        outer = set(bpg.outer_faces[0])
        for face in bpg.faces():
            if set(face) & outer or len(face) <= 3:
                continue
            z = self.next_id
            self.next_id += 1
            walk = [d[0] for d in face]
            for u, v in face:
                r = rot[v]
                r.insert(r.index(u), z)
            rot[z] = walk
            self.lists[z] = set(range(5))
        return rot

    @staticmethod
    def region(rot: dict[int, list[int]], cycle: list[int]) -> dict[int, list[int]]:
        """Rotation of the part of a near-triangulation inside ``cycle``."""
        on = set(cycle)
        n = len(cycle)
        sub: dict[int, list[int]] = {}
        stack = []
        for i, v in enumerate(cycle):
            p, nx = cycle[i - 1], cycle[(i + 1) % n]
            r = rot[v]
            if p not in r or nx not in r:
                raise _Fallback("cycle edge missing from rotation")
            d = len(r)
            j = r.index(p)
            seq = [p]
            t = (j + 1) % d
            while r[t] != nx:
                seq.append(r[t])
                if r[t] not in on:
                    stack.append(r[t])
                t = (t + 1) % d
                if len(seq) > d:
                    raise _Fallback("rotation arc did not close")
            seq.append(nx)
            sub[v] = seq
        while stack:
            x = stack.pop()
            if x in sub:
                continue
            sub[x] = list(rot[x])
            stack.extend(y for y in rot[x] if y not in on and y not in sub)
        return sub

    def near_triangulation(self, rot: dict[int, list[int]], cycle: list[int]) -> None:
        k = len(cycle)
        if k < 3:
            raise _Fallback("degenerate outer cycle")
        if any(v in self.col for v in cycle[2:]) or any(v not in self.col for v in cycle[:2]):
            raise _Fallback("unexpected precoloured vertex")
        if k == 3 and len(rot) == 3:
            self.colour_any(cycle[2])
            return
        pos = {c: i for i, c in enumerate(cycle)}
        for i, ci in enumerate(cycle):
            for w in rot[ci]:
                j = pos.get(w)
                if j is None or j <= i + 1 or (i == 0 and j == k - 1):
                    continue
                side_a = cycle[i:j + 1]
                side_b = cycle[j:] + cycle[:i + 1]
                if i == 0:
                    first, second = side_a, [cycle[0]] + cycle[j:]
                    first_region, second_region = side_a, side_b
                else:
                    first, second = cycle[:i + 1] + cycle[j:], [cycle[j]] + cycle[i:j]
                    first_region, second_region = side_b, side_a
                rot_first = self.region(rot, first_region)
                rot_second = self.region(rot, second_region)
                self.near_triangulation(rot_first, first)
                self.near_triangulation(rot_second, second)
                return
        v = cycle[-1]
        prev, nxt = cycle[-2], cycle[0]
        r = rot[v]
        d = len(r)
        t = (r.index(prev) + 1) % d
        fan = []
        while r[t] != nxt:
            fan.append(r[t])
            t = (t + 1) % d
            if len(fan) > d:
                raise _Fallback("rotation arc did not close")
        if not fan or set(fan) & set(cycle):
            raise _Fallback("chordless cycle without a proper fan")
        blocked = self.mate.get((nxt, self.col[nxt], v))
        avail = sorted(c for c in self.lists[v] if c != blocked)
        if len(avail) < 2:
            raise _Fallback(f"vertex {v} keeps fewer than two colours")
        keep = avail[:2]
        for u in fan:
            for c in keep:
                cu = self.mate.get((v, c, u))
                if cu is not None:
                    self.lists[u].discard(cu)
        rest = {x: [y for y in ys if y != v] for x, ys in rot.items() if x != v}
        self.near_triangulation(rest, cycle[:-1] + fan)
        for c in keep:
            if self.ok(v, c):
                self.col[v] = c
                return
        raise _Fallback(f"both reserved colours of {v} are blocked")


def _finish(g: Graph, a, phi, col: Mapping[int, int] | None) -> PartialColouring | None:
    if col is None:
        return None
    col = PartialColouring({v: c for v, c in col.items() if v in g})
    if len(col) != g.v or not is_valid_colouring(g, a, col):
        return None
    if any(col[v] != c for v, c in phi.items()):
        return None
    return col


def _search(g: Graph, a, phi) -> PartialColouring:
    found = find_colouring(g, a, phi)
    if found is None:
        raise TheoremFalsified("hypotheses verified but no extension exists")
    return found


def extend_5cc(
    pg: PlaneGraph,
    a: CorrespondenceAssignment,
    s: SubgraphRef | Graph,
    phi: Mapping[int, int],
    *,
    strategy: str = "auto",
) -> PartialColouring:
    """Extend ``phi`` from ``s`` to an ``(L, M)``-colouring of ``pg``.

    ``strategy`` is ``"recursive"`` (the inductive construction only, raising
    ``RuntimeError`` if it cannot finish), ``"search"`` (backtracking only) or
    ``"auto"`` (construction first, search on any failure).
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    check_5cc_preconditions(pg, a, s, phi)
    g = pg.graph
    if strategy != "search":
        solver = _Solver(g, a, phi)
        try:
            solver.run(pg)
            result = _finish(g, a, phi, solver.col)
        except _Fallback as exc:
            if strategy == "recursive":
                raise RuntimeError(f"recursive construction failed: {exc}") from None
            result = None
        if result is not None:
            return result
        if strategy == "recursive":
            raise RuntimeError("recursive construction produced an invalid colouring")
    return _search(g, a, phi)


def extend_3cc_girth5(
    pg: PlaneGraph,
    a: CorrespondenceAssignment,
    s: SubgraphRef | Graph,
    independent2: Iterable[int],
    phi: Mapping[int, int],
) -> PartialColouring:
    """Extend ``phi`` to a colouring of a plane graph of girth at least five."""
    check_3cc_preconditions(pg, a, s, independent2, phi)
    return _search(pg.graph, a, phi)


# -- deletability through a one-vertex gadget --------------------------------


def check_deletable_via_extension(
    pg: PlaneGraph,
    h: SubgraphRef | Graph | Iterable[int],
    r: int,
    challenge: CorrespondenceAssignment,
    anchor: int | None = None,
) -> PartialColouring:
    """Colour ``h`` under ``challenge`` by attaching a precoloured anchor.

    ``challenge`` must respect ``|L(u)| >= r - (deg_G(u) - deg_H(u))`` on ``h``.
    The anchor ``v`` (a vertex outside ``h``, by default the smallest one
    adjacent to ``h``) receives the single new colour ``c``; its neighbours in
    ``h`` gain ``c`` matched against the anchor. The graph ``G[V(h) + v]``
    is then coloured by ``extend_5cc`` (``r = 5``) or ``extend_3cc_girth5``
    (``r = 3``, with the outer vertices whose lists have size 2 as the
    independent set), and the result restricted to ``h`` is returned.
    """
    if r not in (3, 5):
        raise PreconditionViolation("r must be 3 or 5")
    g = pg.graph
    if isinstance(h, (SubgraphRef, Graph)):
        hv = set(_as_subgraph(g, h).vertex_subset)
    else:
        hv = set(h)
    if not hv or not hv <= set(g.vertices):
        raise PreconditionViolation("h must be a non-empty vertex subset of g")
    for u in sorted(hv):
        if u not in challenge.lists:
            raise PreconditionViolation(f"challenge has no list at {u}")
        need = r - len(g.neighbours(u) - hv)
        size = len(challenge.lists[u])
        if size == 0:
            raise PreconditionViolation(f"challenge list at {u} is empty")
        if size < need:
            raise PreconditionViolation(f"challenge list at {u} has size {size} < {need}")
    hg = g.induced(hv)
    problems = validate(hg, challenge.restrict(hv))
    if problems:
        raise PreconditionViolation("invalid challenge: " + "; ".join(p.message for p in problems))
    if anchor is None:
        cands = sorted(v for v in g.vertices if v not in hv and g.neighbours(v) & hv)
        anchor = cands[0] if cands else None
    base = challenge.restrict(hv)
    if anchor is None:
        sub = pg.restrict(hv)
        a2, s2, phi2 = base, SubgraphRef.empty(sub.graph), {}
    else:
        if anchor in hv or anchor not in g:
            raise PreconditionViolation("anchor must be a vertex of g outside h")
        sub = pg.restrict(hv | {anchor})
        c = base.max_colour() + 1
        lists = dict(base.lists)
        lists[anchor] = frozenset({c})
        matchings = dict(base.matchings)
        for u in g.neighbours(anchor) & hv:
            lists[u] = lists[u] | {c}
            matchings[edge_key(anchor, u)] = {(c, c)}
        a2 = CorrespondenceAssignment(lists, matchings)
        s2 = SubgraphRef(sub.graph, frozenset({anchor}), frozenset())
        phi2 = {anchor: c}
    if r == 5:
        col = extend_5cc(sub, a2, s2, phi2)
    else:
        outer = sub.outer_vertices()
        ind = [u for u in sub.graph.vertices if u in outer and u != anchor and len(a2.lists[u]) == 2]
        col = extend_3cc_girth5(sub, a2, s2, ind, phi2)
    out = col.restrict(hv)
    if not is_valid_colouring(hg, base, out):
        raise TheoremFalsified("gadget extension does not restrict to a colouring of h")
    return out
