"""Exact counting and enumeration of correspondence colourings.

The engine compiles an instance to bitmask domains, one bit per list colour,
with a kill table ``kill[v][i] = ((w, mask), ...)`` saying which colours of
each neighbour ``w`` become unavailable when ``v`` takes its ``i``-th colour.
Search picks the uncoloured vertex with the fewest remaining colours (ties to
the smallest id) and prunes neighbours forward. Before branching, a vertex
with no uncoloured neighbour is multiplied out, and a vertex ``x`` with a
single uncoloured neighbour ``y`` is summed out into per-colour weights on
``y``: colour ``c`` of ``y`` is weighted by the number of colours ``x`` keeps
when ``y`` takes ``c``. Trees and cycles are therefore counted without
enumerating their colourings.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterator, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .correspondence import (
    CorrespondenceAssignment,
    PartialColouring,
    _permutation_matchings,
    is_valid_colouring,
    random_permutation_assignment,
)
from .errors import BudgetExceeded
from .graph import Edge, Graph, SubgraphRef, _as_subgraph

DEFAULT_NODE_BUDGET = 10**9


@dataclass(frozen=True)
class CountResult:
    """A colouring count; when ``truncated`` it is only a lower bound."""

    count: int
    explored_nodes: int = 0
    truncated: bool = False

    def to_json(self) -> dict:
        return {"count": str(self.count), "explored_nodes": self.explored_nodes, "truncated": self.truncated}

    @classmethod
    def from_json(cls, doc: Mapping) -> CountResult:
        return cls(int(doc["count"]), int(doc["explored_nodes"]), bool(doc["truncated"]))


class _Stop(Exception):
    pass


class _Instance:
    """Bitmask form of ``(g, a)``; vertex ``i`` is ``order[i]``."""

    __slots__ = ("order", "index", "colours", "domain", "kill", "killmap", "nbrs")

    def __init__(self, g: Graph, a: CorrespondenceAssignment):
        self.order = list(g.vertices)
        self.index = {v: i for i, v in enumerate(self.order)}
        self.colours = [sorted(a.lists.get(v, ())) for v in self.order]
        cidx = [{c: j for j, c in enumerate(cs)} for cs in self.colours]
        self.domain = [(1 << len(cs)) - 1 for cs in self.colours]
        kill: list[list[dict[int, int]]] = [[{} for _ in cs] for cs in self.colours]
        for (u, w), pairs in a.matchings.items():
            if u not in self.index or w not in self.index or not g.has_edge(u, w):
                continue
            iu, iw = self.index[u], self.index[w]
            for cu, cw in pairs:
                if cu not in cidx[iu] or cw not in cidx[iw]:
                    continue
                ju, jw = cidx[iu][cu], cidx[iw][cw]
                kill[iu][ju][iw] = kill[iu][ju].get(iw, 0) | (1 << jw)
                kill[iw][jw][iu] = kill[iw][jw].get(iu, 0) | (1 << ju)
        self.kill = [[tuple(sorted(d.items())) for d in row] for row in kill]
        self.killmap = kill
        self.nbrs = [sorted(self.index[w] for w in g.neighbours(v)) for v in self.order]

    def pin(self, phi: Mapping[int, int]) -> list[int]:
        dom = list(self.domain)
        for v, c in phi.items():
            i = self.index[v]
            dom[i] = 1 << self.colours[i].index(c)
        return dom


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _count(inst: _Instance, dom: list[int], budget: int, limit: int | None) -> CountResult:
    n = len(inst.order)
    unc = set(range(n))
    udeg = [len(inst.nbrs[i]) for i in range(n)]
    kill, nbrs, killmap = inst.kill, inst.nbrs, inst.killmap
    weight: list[list[int] | None] = [None] * n
    state = {"acc": 0, "nodes": 0}

    def total(x: int, mask: int) -> int:
        wx = weight[x]
        if wx is None:
            return mask.bit_count()
        return sum(wx[d] for d in _bits(mask))

    def reduce(log: list) -> int:
        """Sum out vertices with at most one uncoloured neighbour; returns a factor."""
        factor = 1
        changed = True
        while changed and factor:
            changed = False
            for x in sorted(unc):
                if udeg[x] > 1:
                    continue
                changed = True
                unc.discard(x)
                log.append(("x", x))
                if udeg[x] == 0:
                    factor *= total(x, dom[x])
                    if not factor:
                        break
                    continue
                y = next(w for w in nbrs[x] if w in unc)
                udeg[y] -= 1
                log.append(("d", y))
                wy = weight[y]
                new = [0] * len(inst.colours[y]) if wy is None else list(wy)
                mask = dom[y]
                for cj in _bits(dom[y]):
                    avail = dom[x] & ~killmap[y][cj].get(x, 0)
                    val = (1 if wy is None else wy[cj]) * total(x, avail)
                    new[cj] = val
                    if not val:
                        mask &= ~(1 << cj)
                log.append(("w", y, wy, dom[y]))
                weight[y] = new
                dom[y] = mask
                if not mask:
                    factor = 0
                    break
        return factor

    def undo(log: list) -> None:
        for entry in reversed(log):
            if entry[0] == "x":
                unc.add(entry[1])
            elif entry[0] == "d":
                udeg[entry[1]] += 1
            else:
                _, y, wy, old = entry
                weight[y] = wy
                dom[y] = old

    def rec(mult: int) -> None:
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _Stop
        log: list = []
        try:
            mult *= reduce(log)
            if mult == 0:
                return
            if not unc:
                state["acc"] += mult
                if limit is not None and state["acc"] >= limit:
                    raise _Stop
                return
            v = min(unc, key=lambda i: (dom[i].bit_count(), i))
            unc.discard(v)
            for w in nbrs[v]:
                udeg[w] -= 1
            try:
                wv = weight[v]
                for ci in _bits(dom[v]):
                    saved = []
                    ok = True
                    for w, mask in kill[v][ci]:
                        if w in unc and dom[w] & mask:
                            saved.append((w, dom[w]))
                            dom[w] &= ~mask
                            if not dom[w]:
                                ok = False
                                break
                    if ok:
                        rec(mult if wv is None else mult * wv[ci])
                    for w, old in saved:
                        dom[w] = old
            finally:
                for w in nbrs[v]:
                    udeg[w] += 1
                unc.add(v)
        finally:
            undo(log)

    try:
        rec(1)
    except _Stop:
        return CountResult(state["acc"], state["nodes"], True)
    return CountResult(state["acc"], state["nodes"], False)


def _check_phi(g: Graph, a: CorrespondenceAssignment, s: SubgraphRef, phi: Mapping[int, int]) -> None:
    if set(phi) != set(s.vertex_subset):
        raise ValueError("phi must colour exactly the vertices of s")
    sub = g.induced(s.vertex_subset)
    if not is_valid_colouring(sub, a, phi):
        raise ValueError("phi is not a valid colouring of s")


def _count_worker(args) -> CountResult:
    g, a, phi, budget = args
    inst = _Instance(g, a)
    return _count(inst, inst.pin(phi), budget, None)


def _count_split(g, a, phi, budget, workers) -> CountResult:
    """Sum over the colours of one branching vertex, computed in parallel."""
    inst = _Instance(g, a)
    dom = inst.pin(phi)
    free = [i for i in range(len(inst.order)) if inst.order[i] not in phi]
    if not free:
        return _count(inst, dom, budget, None)
    i = min(free, key=lambda j: (-len(inst.nbrs[j]), j))
    v = inst.order[i]
    tasks = [(g, a, {**phi, v: inst.colours[i][ci]}, budget) for ci in _bits(dom[i])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_count_worker, tasks))
    return CountResult(
        sum(p.count for p in parts), sum(p.explored_nodes for p in parts), any(p.truncated for p in parts)
    )


def count_colourings(
    g: Graph,
    a: CorrespondenceAssignment,
    *,
    budget: int = DEFAULT_NODE_BUDGET,
    limit: int | None = None,
    workers: int = 1,
) -> CountResult:
    """Number of ``(L, M)``-colourings of ``g``.

    With ``limit`` the search stops once ``limit`` colourings are found, and
    the result is flagged truncated; the count is then a lower bound, as it
    is when the node ``budget`` runs out.
    """
    if workers > 1 and limit is None:
        return _count_split(g, a, {}, budget, workers)
    inst = _Instance(g, a)
    return _count(inst, list(inst.domain), budget, limit)


def count_extensions(
    g: Graph,
    a: CorrespondenceAssignment,
    s: SubgraphRef | Graph,
    phi: Mapping[int, int],
    *,
    budget: int = DEFAULT_NODE_BUDGET,
    limit: int | None = None,
    workers: int = 1,
) -> CountResult:
    """Number of colourings of ``g`` that agree with ``phi`` on ``V(s)``."""
    s = _as_subgraph(g, s)
    _check_phi(g, a, s, phi)
    if workers > 1 and limit is None:
        return _count_split(g, a, dict(phi), budget, workers)
    inst = _Instance(g, a)
    return _count(inst, inst.pin(phi), budget, limit)


def _search(inst: _Instance, dom: list[int], lexicographic: bool) -> Iterator[dict[int, int]]:
    n = len(inst.order)
    colour = [-1] * n
    kill = inst.kill

    def rec(remaining: list[int]):
        if not remaining:
            yield {inst.order[i]: inst.colours[i][colour[i]] for i in range(n)}
            return
        if lexicographic:
            v = remaining[0]
        else:
            v = min(remaining, key=lambda i: (dom[i].bit_count(), i))
        rest = [i for i in remaining if i != v]
        for ci in _bits(dom[v]):
            saved = []
            ok = True
            for w, mask in kill[v][ci]:
                if colour[w] < 0 and dom[w] & mask:
                    saved.append((w, dom[w]))
                    dom[w] &= ~mask
                    if not dom[w]:
                        ok = False
                        break
            if ok:
                colour[v] = ci
                yield from rec(rest)
                colour[v] = -1
            for w, old in saved:
                dom[w] = old

    if any(d == 0 for d in dom):
        return
    yield from rec(list(range(n)))


def enumerate_colourings(
    g: Graph, a: CorrespondenceAssignment, cap: int | None = None
) -> Iterator[PartialColouring]:
    """Colourings in lexicographic order of (vertex id, colour), at most ``cap``."""
    inst = _Instance(g, a)
    stream = _search(inst, list(inst.domain), lexicographic=True)
    if cap is not None:
        stream = itertools.islice(stream, cap)
    for col in stream:
        yield PartialColouring(col)


def find_colouring(
    g: Graph, a: CorrespondenceAssignment, phi: Mapping[int, int] | None = None
) -> PartialColouring | None:
    """Some colouring extending ``phi`` (not checked for validity), or ``None``."""
    inst = _Instance(g, a)
    dom = inst.pin(phi or {})
    for col in _search(inst, dom, lexicographic=False):
        return PartialColouring(col)
    return None


# -- minimum over permutation assignments ----------------------------------


def spanning_forest(g: Graph) -> list[Edge]:
    """BFS forest from the smallest vertex of each component, neighbours sorted."""
    seen: set[int] = set()
    forest = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y in sorted(g.neighbours(x)):
                if y not in seen:
                    seen.add(y)
                    forest.append((min(x, y), max(x, y)))
                    queue.append(y)
    return sorted(forest)


def gauge_fixed_assignments(g: Graph, k: int, budget: int = 10**8) -> Iterator[CorrespondenceAssignment]:
    """Permutation assignments with the identity on a spanning forest.

    Renaming the colours at each vertex maps every permutation assignment to
    one of these without changing its number of colourings, so minima over
    the two families agree.
    """
    forest = set(spanning_forest(g))
    free = [e for e in g.sorted_edges() if e not in forest]
    total = math.factorial(k) ** len(free)
    if total > budget:
        raise BudgetExceeded(f"{total} gauge-fixed assignments exceed the budget {budget}", total, budget)

    def gen():
        lists = {v: frozenset(range(k)) for v in g.vertices}
        ident = tuple(range(k))
        fixed = _permutation_matchings(sorted(forest), [ident] * len(forest))
        for choice in itertools.product(itertools.permutations(range(k)), repeat=len(free)):
            yield CorrespondenceAssignment(lists, {**fixed, **_permutation_matchings(free, choice)}, k)

    return gen()


def min_count_over_permutations(
    g: Graph,
    k: int,
    budget: int = 10**8,
    *,
    gauge: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[CountResult, CorrespondenceAssignment]:
    """Smallest colouring count over all full permutation ``k``-assignments.

    Each count stops as soon as it reaches the running minimum, so only the
    attaining witness is counted to completion. ``budget`` caps the number of
    assignments; ``gauge`` enumerates the gauge-fixed family instead.
    """
    from .correspondence import permutation_assignments

    family = gauge_fixed_assignments(g, k, budget) if gauge else permutation_assignments(g, k, budget)
    best: CountResult | None = None
    witness = None
    nodes = 0
    for a in family:
        res = count_colourings(g, a, budget=node_budget, limit=None if best is None else best.count)
        nodes += res.explored_nodes
        if best is None or res.count < best.count:
            if res.truncated:
                raise BudgetExceeded("node budget exhausted while counting", res.explored_nodes, node_budget)
            best, witness = res, a
            if best.count == 0:
                break
    assert best is not None and witness is not None
    return CountResult(best.count, nodes, False), witness


def sampled_min_over_permutations(
    g: Graph, k: int, samples: int, rng: random.Random, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[CountResult, CorrespondenceAssignment]:
    """Minimum count over ``samples`` random permutation assignments."""
    best = None
    witness = None
    nodes = 0
    for _ in range(samples):
        a = random_permutation_assignment(g, k, rng)
        res = count_colourings(g, a, budget=node_budget, limit=best)
        nodes += res.explored_nodes
        if best is None or res.count < best:
            if res.truncated:
                raise BudgetExceeded("node budget exhausted while counting", res.explored_nodes, node_budget)
            best, witness = res.count, a
    if best is None:
        raise ValueError("samples must be positive")
    return CountResult(best, nodes, False), witness
