"""Simple graphs, subgraph references and girth machinery."""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from types import MappingProxyType

from .errors import GraphError

#: Girth of an acyclic graph, edge or vertex. Compares above every integer.
INFINITY = math.inf

#: Desk-scale cap on the number of vertices of any graph built here.
MAX_VERTICES = 64

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on small non-negative integer ids."""

    __slots__ = ("_vertices", "_adj", "_edges")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        *,
        max_vertices: int = MAX_VERTICES,
    ):
        vs = set()
        for v in vertices:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise GraphError(f"vertex ids must be non-negative integers, got {v!r}")
            vs.add(v)
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            for x in (u, v):
                if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                    raise GraphError(f"vertex ids must be non-negative integers, got {x!r}")
            vs.add(u)
            vs.add(v)
            es.add(edge_key(u, v))
        if len(vs) > max_vertices:
            raise GraphError(f"{len(vs)} vertices exceeds the cap of {max_vertices}")
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = tuple(sorted(vs))
        self._adj = MappingProxyType({v: frozenset(adj[v]) for v in self._vertices})
        self._edges = frozenset(es)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def adjacency(self):
        return self._adj

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    @property
    def v(self) -> int:
        return len(self._vertices)

    @property
    def e(self) -> int:
        return len(self._edges)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def neighbours(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __reduce__(self):
        return (_rebuild_graph, (self._vertices, self.sorted_edges()))

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self._vertices)}, edges={self.sorted_edges()})"

    # -- derived graphs --------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> Graph:
        keep = set(vertices)
        missing = keep - set(self._vertices)
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)}")
        return Graph(keep, (e for e in self._edges if e[0] in keep and e[1] in keep))

    def remove_vertices(self, vertices: Iterable[int]) -> Graph:
        drop = set(vertices)
        return self.induced(v for v in self._vertices if v not in drop)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        drop = {edge_key(*e) for e in edges}
        return Graph(self._vertices, self._edges - drop)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self._vertices, list(self._edges) + list(edges))

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for root in self._vertices:
            if root in seen:
                continue
            seen.add(root)
            comp = [root]
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def _rebuild_graph(vertices, edges) -> Graph:
    return Graph(vertices, edges, max_vertices=max(MAX_VERTICES, len(vertices)))


@dataclass(frozen=True)
class SubgraphRef:
    """A subgraph of ``parent`` given by a vertex subset and an edge subset."""

    parent: Graph
    vertex_subset: frozenset[int]
    edge_subset: frozenset[Edge]

    def __post_init__(self):
        vs = frozenset(self.vertex_subset)
        es = frozenset(edge_key(*e) for e in self.edge_subset)
        object.__setattr__(self, "vertex_subset", vs)
        object.__setattr__(self, "edge_subset", es)
        unknown = vs - set(self.parent.vertices)
        if unknown:
            raise GraphError(f"vertices {sorted(unknown)} are not in the parent graph")
        for u, w in es:
            if not self.parent.has_edge(u, w):
                raise GraphError(f"edge ({u},{w}) is not in the parent graph")
            if u not in vs or w not in vs:
                raise GraphError(f"edge ({u},{w}) has an endpoint outside the vertex subset")

    @classmethod
    def induced(cls, parent: Graph, vertices: Iterable[int]) -> SubgraphRef:
        vs = frozenset(vertices)
        es = frozenset(e for e in parent.edges if e[0] in vs and e[1] in vs)
        return cls(parent, vs, es)

    @classmethod
    def from_edges(
        cls, parent: Graph, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()
    ) -> SubgraphRef:
        es = frozenset(edge_key(*e) for e in edges)
        vs = set(vertices)
        for u, w in es:
            vs.update((u, w))
        return cls(parent, frozenset(vs), es)

    @classmethod
    def whole(cls, parent: Graph) -> SubgraphRef:
        return cls(parent, frozenset(parent.vertices), parent.edges)

    @classmethod
    def empty(cls, parent: Graph) -> SubgraphRef:
        return cls(parent, frozenset(), frozenset())

    @property
    def is_induced(self) -> bool:
        return self.edge_subset == SubgraphRef.induced(self.parent, self.vertex_subset).edge_subset

    @property
    def v(self) -> int:
        return len(self.vertex_subset)

    @property
    def e(self) -> int:
        return len(self.edge_subset)

    def as_graph(self) -> Graph:
        return Graph(self.vertex_subset, self.edge_subset)

    def degree(self, v: int) -> int:
        return sum(1 for u in self.parent.neighbours(v) if edge_key(u, v) in self.edge_subset)


def _as_subgraph(g: Graph, h: SubgraphRef | Graph) -> SubgraphRef:
    if isinstance(h, SubgraphRef):
        if h.parent != g:
            for u, w in h.edge_subset:
                if not g.has_edge(u, w):
                    raise GraphError("h is not a subgraph of g")
            if not h.vertex_subset <= set(g.vertices):
                raise GraphError("h is not a subgraph of g")
            return SubgraphRef(g, h.vertex_subset, h.edge_subset)
        return h
    try:
        return SubgraphRef(g, frozenset(h.vertices), h.edges)
    except GraphError as exc:
        raise GraphError(f"h is not a subgraph of g: {exc}") from None


def diff_counts(g: Graph, h: SubgraphRef | Graph) -> tuple[int, int]:
    """Return ``(v(G) - v(H), e(G) - e(H))`` for a subgraph ``h`` of ``g``."""
    h = _as_subgraph(g, h)
    return g.v - h.v, g.e - h.e


# -- girth -----------------------------------------------------------------


def _bfs_distance(g: Graph, source: int, target: int, skip_edge: Edge | None = None) -> float:
    if source == target:
        return 0
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.neighbours(x):
            if y in dist or (skip_edge is not None and edge_key(x, y) == skip_edge):
                continue
            dist[y] = dist[x] + 1
            if y == target:
                return dist[y]
            queue.append(y)
    return INFINITY


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``INFINITY`` for a forest.

    One BFS per root; a non-tree edge closing at depths ``a`` and ``b`` bounds
    the girth by ``a + b + 1`` and the minimum over all roots is exact.
    """
    best = INFINITY
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in g.neighbours(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def edge_girth(g: Graph, e: tuple[int, int]) -> float:
    """Length of a shortest cycle through edge ``e``; ``INFINITY`` for a bridge."""
    u, w = e
    if not g.has_edge(u, w):
        raise GraphError(f"({u},{w}) is not an edge")
    return _bfs_distance(g, u, w, skip_edge=edge_key(u, w)) + 1


def vertex_girth(g: Graph, v: int) -> float:
    """Length of a shortest cycle through ``v``; ``INFINITY`` if none."""
    return min((edge_girth(g, (v, w)) for w in g.neighbours(v)), default=INFINITY)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    return not any(u in s and w in s for u, w in g.edges)


def neighbours_in(g: Graph, v: int, s: Iterable[int]) -> int:
    return len(g.neighbours(v) & set(s))


def biconnected_components(g: Graph) -> list[list[Edge]]:
    """Edge sets of the blocks of ``g`` (isolated vertices contribute nothing)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    stack: list[Edge] = []
    blocks: list[list[Edge]] = []

    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        work = [(root, None, iter(sorted(g.neighbours(root))))]
        while work:
            x, par, it = work[-1]
            advanced = False
            for y in it:
                if y == par:
                    continue
                if y not in index:
                    index[y] = low[y] = counter
                    counter += 1
                    stack.append(edge_key(x, y))
                    work.append((y, x, iter(sorted(g.neighbours(y)))))
                    advanced = True
                    break
                if index[y] < index[x]:
                    stack.append(edge_key(x, y))
                    low[x] = min(low[x], index[y])
            if advanced:
                continue
            work.pop()
            if par is not None:
                low[par] = min(low[par], low[x])
                if low[x] >= index[par]:
                    block = []
                    target = edge_key(par, x)
                    while True:
                        e = stack.pop()
                        block.append(e)
                        if e == target:
                            break
                    blocks.append(sorted(block))
    return blocks
