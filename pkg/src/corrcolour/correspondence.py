"""Correspondence assignments, validation and canonical constructions."""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import BudgetExceeded, GraphError, PreconditionViolation
from .graph import Edge, Graph, SubgraphRef, _as_subgraph, edge_key, vertex_girth
from .plane import PlaneGraph

Pair = tuple[int, int]


def _freeze_pairs(u: int, v: int, pairs: Iterable[Pair]) -> tuple[Edge, frozenset[Pair]]:
    """Key an edge as ``(min, max)`` and orient pairs accordingly."""
    pairs = [(int(a), int(b)) for a, b in pairs]
    if u < v:
        return (u, v), frozenset(pairs)
    return (v, u), frozenset((b, a) for a, b in pairs)


@dataclass(frozen=True)
class CorrespondenceAssignment:
    """Lists ``L(v)`` and partial matchings ``M_uv`` between endpoint lists.

    ``matchings[(u, v)]`` with ``u < v`` holds pairs ``(colour at u, colour at
    v)``; an edge without an entry carries the empty matching.
    """

    lists: Mapping[int, frozenset[int]]
    matchings: Mapping[Edge, frozenset[Pair]] = field(default_factory=dict)
    k: int | None = None

    def __post_init__(self):
        lists = {int(v): frozenset(int(c) for c in cs) for v, cs in self.lists.items()}
        matchings: dict[Edge, set[Pair]] = {}
        for (u, v), pairs in self.matchings.items():
            key, fp = _freeze_pairs(int(u), int(v), pairs)
            matchings.setdefault(key, set()).update(fp)
        object.__setattr__(self, "lists", MappingProxyType(dict(sorted(lists.items()))))
        object.__setattr__(
            self,
            "matchings",
            MappingProxyType({key: frozenset(p) for key, p in sorted(matchings.items()) if p}),
        )

    def __hash__(self) -> int:
        return hash((tuple(self.lists.items()), tuple(self.matchings.items()), self.k))

    def __reduce__(self):
        return (CorrespondenceAssignment, (dict(self.lists), dict(self.matchings), self.k))

    def matching(self, u: int, v: int) -> frozenset[Pair]:
        """Pairs of ``M_uv`` oriented as ``(colour at u, colour at v)``."""
        pairs = self.matchings.get(edge_key(u, v), frozenset())
        if u < v:
            return pairs
        return frozenset((b, a) for a, b in pairs)

    def list_sizes(self) -> dict[int, int]:
        return {v: len(cs) for v, cs in self.lists.items()}

    def max_colour(self) -> int:
        return max((c for cs in self.lists.values() for c in cs), default=-1)

    def restrict(self, vertices: Iterable[int]) -> CorrespondenceAssignment:
        keep = set(vertices)
        return CorrespondenceAssignment(
            {v: cs for v, cs in self.lists.items() if v in keep},
            {e: p for e, p in self.matchings.items() if e[0] in keep and e[1] in keep},
            None,
        )

    def replace_lists(self, updates: Mapping[int, Iterable[int]]) -> CorrespondenceAssignment:
        """New lists at some vertices; matching pairs that leave a list are dropped."""
        lists = dict(self.lists)
        lists.update({v: frozenset(cs) for v, cs in updates.items()})
        matchings = {
            (u, v): frozenset((a, b) for a, b in pairs if a in lists.get(u, ()) and b in lists.get(v, ()))
            for (u, v), pairs in self.matchings.items()
        }
        return CorrespondenceAssignment(lists, matchings, None)


class PartialColouring(Mapping[int, int]):
    """Immutable map from a vertex subset to colours."""

    __slots__ = ("_data",)

    def __init__(self, data: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        self._data = dict(sorted((int(v), int(c)) for v, c in dict(data).items()))

    def __getitem__(self, v: int) -> int:
        return self._data[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        return f"PartialColouring({self._data})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return self._data == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._data.items()))

    def restrict(self, vertices: Iterable[int]) -> PartialColouring:
        keep = set(vertices)
        return PartialColouring({v: c for v, c in self._data.items() if v in keep})

    def extend(self, more: Mapping[int, int]) -> PartialColouring:
        data = dict(self._data)
        data.update(more)
        return PartialColouring(data)


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str


def validate(g: Graph, a: CorrespondenceAssignment) -> list[Violation]:
    """Every breach of the assignment invariants on ``g``; empty means valid."""
    out = []
    for v in g.vertices:
        if v not in a.lists:
            out.append(Violation("missing_list", str(v), f"no list for vertex {v}"))
        elif a.k is not None and len(a.lists[v]) < a.k:
            out.append(
                Violation("list_too_small", str(v), f"list at {v} has {len(a.lists[v])} < k={a.k} colours")
            )
    for v in a.lists:
        if v not in g:
            out.append(Violation("unknown_vertex", str(v), f"list given for unknown vertex {v}"))
    for (u, v), pairs in a.matchings.items():
        where = f"{u},{v}"
        if not g.has_edge(u, v):
            out.append(Violation("not_an_edge", where, f"matching given on non-edge {u},{v}"))
            continue
        for x, side in ((u, 0), (v, 1)):
            seen: dict[int, int] = {}
            for p in sorted(pairs):
                c = p[side]
                seen[c] = seen.get(c, 0) + 1
            for c, n in seen.items():
                if n > 1:
                    out.append(Violation("not_matching", where, f"not a matching at {x}:{c}"))
                if c not in a.lists.get(x, ()):
                    out.append(Violation("colour_outside_list", where, f"colour outside list: {c} at {x}"))
    return out


def is_valid_colouring(g: Graph, a: CorrespondenceAssignment, c: Mapping[int, int]) -> bool:
    for v, col in c.items():
        if v not in g or col not in a.lists.get(v, ()):
            return False
    for (u, v), pairs in a.matchings.items():
        if u in c and v in c and (c[u], c[v]) in pairs:
            return False
    return True


def from_lists(g: Graph, lists: Mapping[int, Iterable[int]], k: int | None = None) -> CorrespondenceAssignment:
    """Identity matchings on common colours, encoding ordinary list colouring."""
    frozen = {}
    for v in g.vertices:
        if v not in lists:
            raise GraphError(f"missing list for vertex {v}")
        frozen[v] = frozenset(lists[v])
    matchings = {(u, v): frozenset((c, c) for c in frozen[u] & frozen[v]) for u, v in g.edges}
    return CorrespondenceAssignment(frozen, matchings, k)


def identity_assignment(g: Graph, k: int) -> CorrespondenceAssignment:
    return from_lists(g, {v: range(k) for v in g.vertices}, k)


def _permutation_matchings(edges: list[Edge], perms: Iterable[tuple[int, ...]]):
    return {e: frozenset(enumerate(p)) for e, p in zip(edges, perms)}


def permutation_assignments(
    g: Graph, k: int, budget: int = 10**8
) -> Iterator[CorrespondenceAssignment]:
    """All assignments with lists ``{0..k-1}`` and full permutation matchings.

    Edges vary in sorted order with the last edge fastest; each edge runs
    through permutations of ``range(k)`` lexicographically, the pair set of a
    permutation ``p`` being ``{(i, p[i])}``. Raises ``BudgetExceeded`` before
    yielding anything when ``(k!)^e`` exceeds ``budget``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    total = math.factorial(k) ** g.e
    if total > budget:
        raise BudgetExceeded(f"{total} permutation assignments exceed the budget {budget}", total, budget)
    return _iter_permutation_assignments(g, k)


def _iter_permutation_assignments(g: Graph, k: int) -> Iterator[CorrespondenceAssignment]:
    edges = g.sorted_edges()
    lists = {v: frozenset(range(k)) for v in g.vertices}
    perms = list(itertools.permutations(range(k)))
    for choice in itertools.product(perms, repeat=len(edges)):
        yield CorrespondenceAssignment(lists, _permutation_matchings(edges, choice), k)


def random_permutation_assignment(g: Graph, k: int, rng: random.Random) -> CorrespondenceAssignment:
    edges = g.sorted_edges()
    perms = []
    for _ in edges:
        p = list(range(k))
        rng.shuffle(p)
        perms.append(tuple(p))
    return CorrespondenceAssignment(
        {v: frozenset(range(k)) for v in g.vertices}, _permutation_matchings(edges, perms), k
    )


def precolouring_gadget(
    g: Graph,
    h: SubgraphRef | Graph,
    r: int,
    base: CorrespondenceAssignment | None = None,
) -> tuple[CorrespondenceAssignment, PartialColouring]:
    """Assignment forcing the colouring ``v -> c_v`` on ``H``.

    Every ``v`` in ``H`` gets a new colour ``c_v`` and all of them share a set
    ``R`` of ``r - 1`` further new colours, so ``L(v) = {c_v} | R``. An outside
    vertex ``u`` keeps its base list and gains ``c_v`` for each neighbour ``v``
    in ``H``; the edge ``uv`` matches ``c_v`` with ``c_v``. Edges with both ends
    in ``H`` carry empty matchings.

    The base assignment covers ``G - V(H)``; by default ``u`` gets
    ``{0, ..., r - |N(u) & V(H)| - 1}`` with identity matchings. New colours
    are allocated upward from one above every colour already in use.
    """
    h = _as_subgraph(g, h)
    hv = h.vertex_subset
    outside = [v for v in g.vertices if v not in hv]
    if h.v == g.v and h.e == g.e:
        raise PreconditionViolation("h must be a proper subgraph of g")
    if not outside:
        raise PreconditionViolation("h must miss at least one vertex of g for the construction")
    if r < 1:
        raise PreconditionViolation("r must be at least 1")
    if base is None:
        base = from_lists(
            g.remove_vertices(hv),
            {u: range(max(0, r - len(g.neighbours(u) & hv))) for u in outside},
        )
    else:
        missing = [u for u in outside if u not in base.lists]
        if missing:
            raise PreconditionViolation(f"base assignment lacks lists for {missing}")
    nxt = base.restrict(outside).max_colour() + 1
    fresh = {}
    for v in sorted(hv):
        fresh[v] = nxt
        nxt += 1
    shared = frozenset(range(nxt, nxt + r - 1))
    lists: dict[int, frozenset[int]] = {v: frozenset({fresh[v]}) | shared for v in hv}
    for u in outside:
        lists[u] = frozenset(base.lists[u]) | {fresh[v] for v in g.neighbours(u) & hv}
    matchings: dict[Edge, frozenset[Pair]] = {}
    for u, v in g.edges:
        if u in hv and v in hv:
            continue
        if u in hv or v in hv:
            x = u if u in hv else v
            matchings[(u, v)] = frozenset({(fresh[x], fresh[x])})
        else:
            matchings[(u, v)] = base.matchings.get((u, v), frozenset())
    return CorrespondenceAssignment(lists, matchings), PartialColouring(fresh)


def local_girth_lists(g: PlaneGraph | Graph) -> dict[int, frozenset[int]]:
    """Lists of size 5, 4 or 3 as the vertex girth is 3, 4, or at least 5."""
    graph = g.graph if isinstance(g, PlaneGraph) else g
    out = {}
    for v in graph.vertices:
        vg = vertex_girth(graph, v)
        size = 5 if vg == 3 else 4 if vg == 4 else 3
        out[v] = frozenset(range(size))
    return out
