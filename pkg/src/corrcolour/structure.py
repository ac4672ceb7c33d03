"""Deficiency, deletability and criticality predicates."""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .correspondence import CorrespondenceAssignment, PartialColouring, is_valid_colouring
from .counting import count_colourings, enumerate_colourings, find_colouring
from .errors import BudgetExceeded, GraphError
from .graph import Edge, Graph, SubgraphRef, _as_subgraph, diff_counts, edge_key
from .plane import PlaneGraph

EPSILON_5CC = Fraction(1, 50)
EPSILON_3CC_GIRTH5 = Fraction(1, 88)
EPSILON_EXP_5CC = Fraction(1, 3484)
EPSILON_EXP_3CC_GIRTH5 = Fraction(1, 25380)


def rational_json(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions, ``{"num", "den"}`` objects and ``"p/q"`` strings."""
    if isinstance(value, Mapping):
        return Fraction(int(value["num"]), int(value["den"]))
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


# -- deficiency --------------------------------------------------------------


@dataclass(frozen=True)
class DeficiencyReport:
    g_param: int
    v_diff: int
    e_diff: int
    def_g: int
    epsilon: Fraction
    d: Fraction

    @property
    def d_sign(self) -> int:
        return (self.d > 0) - (self.d < 0)

    def d_at_least(self, threshold: Fraction | int) -> bool:
        """``d >= threshold`` decided by cross-multiplied integers."""
        t = Fraction(threshold)
        num, den = self.epsilon.numerator, self.epsilon.denominator
        return t.denominator * (den * self.def_g - num * self.v_diff) >= t.numerator * den

    def to_json(self) -> dict:
        return {
            "g_param": self.g_param,
            "v_diff": self.v_diff,
            "e_diff": self.e_diff,
            "def_g": self.def_g,
            "epsilon": rational_json(self.epsilon),
            "d": rational_json(self.d),
            "d_sign": self.d_sign,
        }


def deficiency(
    g: Graph, h: SubgraphRef | Graph, g_param: int, epsilon: Fraction | int | str = 0
) -> DeficiencyReport:
    """``def_g(G|H) = (g-2) e(G|H) - g v(G|H)`` and ``d = def_g - eps v(G|H)``."""
    if g_param < 3:
        raise ValueError("g_param must be at least 3")
    eps = parse_rational(epsilon)
    v_diff, e_diff = diff_counts(g, h)
    def_g = (g_param - 2) * e_diff - g_param * v_diff
    return DeficiencyReport(g_param, v_diff, e_diff, def_g, eps, def_g - eps * v_diff)


def d_ge_check(
    g: Graph, h: SubgraphRef | Graph, g_param: int, epsilon, threshold
) -> bool:
    return deficiency(g, h, g_param, epsilon).d_at_least(parse_rational(threshold))


# -- canonical assignments for the universal quantifier -----------------------


def required_list_sizes(g: Graph, hv: Iterable[int], r: int) -> dict[int, int]:
    """``max(0, r - (deg_G(u) - deg_H(u)))`` for an induced ``H``."""
    hv = set(hv)
    return {u: max(0, r - len(g.neighbours(u) - hv)) for u in sorted(hv)}


def peel(graph: Graph, sizes: Mapping[int, int]) -> tuple[list[int], list[int], list[int]]:
    """Repeatedly remove vertices whose list outnumbers their remaining degree.

    Returns ``(peeled order, slack at removal, core)``. Colouring the peeled
    vertices in reverse order always succeeds, each with at least its slack
    of choices, once the core is coloured.
    """
    remaining = set(graph.vertices)
    order, slack = [], []
    changed = True
    while changed:
        changed = False
        for u in sorted(remaining):
            d = len(graph.neighbours(u) & remaining)
            if sizes[u] > d:
                remaining.discard(u)
                order.append(u)
                slack.append(sizes[u] - d)
                changed = True
    return order, slack, sorted(remaining)


def _bfs_parents(graph: Graph) -> list[tuple[int, int]]:
    """Tree edges ``(parent, child)`` of a BFS forest, in discovery order."""
    seen: set[int] = set()
    out = []
    for root in graph.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y in sorted(graph.neighbours(x)):
                if y not in seen:
                    seen.add(y)
                    out.append((x, y))
                    queue.append(y)
    return out


def _injection_pairs(src: int, dst_list: tuple[int, ...]) -> frozenset[tuple[int, int]]:
    return frozenset(zip(range(src), dst_list))


@dataclass
class CanonicalFamily:
    """Gauge-fixed maximal injective matchings on lists ``{0..s(u)-1}``.

    For a forest edge from parent ``p`` to child ``c`` the matching is fixed up
    to renaming the colours at ``c``: one choice per ``s(c)``-subset of the
    parent's colours when ``s(c) <= s(p)``, a single choice otherwise. Every
    other edge ranges over all injections from the smaller list into the
    larger. Minima of colourability and of colouring counts over this family
    equal those over all assignments meeting the list sizes.
    """

    graph: Graph
    sizes: Mapping[int, int]
    tree: list[tuple[int, int]] = field(init=False)
    free: list[Edge] = field(init=False)

    def __post_init__(self):
        self.tree = _bfs_parents(self.graph)
        tree_keys = {edge_key(*e) for e in self.tree}
        self.free = [e for e in self.graph.sorted_edges() if e not in tree_keys]

    def size(self) -> int:
        total = 1
        for p, c in self.tree:
            sp, sc = self.sizes[p], self.sizes[c]
            total *= math.comb(sp, sc) if sc <= sp else 1
        for u, w in self.free:
            a, b = sorted((self.sizes[u], self.sizes[w]))
            total *= math.perm(b, a)
        return total

    def _tree_options(self, p: int, c: int) -> list[dict[Edge, frozenset]]:
        sp, sc = self.sizes[p], self.sizes[c]
        key = edge_key(p, c)
        opts = []
        if sc <= sp:
            for image in itertools.combinations(range(sp), sc):
                pairs = frozenset((pc, cc) for cc, pc in enumerate(image))
                opts.append(pairs)
        else:
            opts.append(frozenset((i, i) for i in range(sp)))
        # pairs are (colour at p, colour at c); orient them for the key
        return [{key: pr if p < c else frozenset((b, a) for a, b in pr)} for pr in opts]

    def _free_options(self, u: int, w: int) -> list[dict[Edge, frozenset]]:
        su, sw = self.sizes[u], self.sizes[w]
        opts = []
        if su <= sw:
            for image in itertools.permutations(range(sw), su):
                opts.append({(u, w): frozenset(zip(range(su), image))})
        else:
            for image in itertools.permutations(range(su), sw):
                opts.append({(u, w): frozenset((a, b) for b, a in zip(range(sw), image))})
        return opts

    def lists(self) -> dict[int, frozenset[int]]:
        return {u: frozenset(range(self.sizes[u])) for u in self.graph.vertices}

    def __iter__(self) -> Iterator[CorrespondenceAssignment]:
        lists = self.lists()
        choices = [self._tree_options(p, c) for p, c in self.tree]
        choices += [self._free_options(u, w) for u, w in self.free]
        for combo in itertools.product(*choices):
            matchings = {}
            for part in combo:
                matchings.update(part)
            yield CorrespondenceAssignment(lists, matchings)

    def sample(self, rng: random.Random) -> CorrespondenceAssignment:
        """A random maximal injective assignment (not gauge-fixed)."""
        matchings = {}
        for u, w in self.graph.sorted_edges():
            su, sw = self.sizes[u], self.sizes[w]
            if su <= sw:
                image = rng.sample(range(sw), su)
                matchings[(u, w)] = frozenset(zip(range(su), image))
            else:
                image = rng.sample(range(su), sw)
                matchings[(u, w)] = frozenset((a, b) for b, a in zip(range(sw), image))
        return CorrespondenceAssignment(self.lists(), matchings)


# -- deletability ------------------------------------------------------------

DELETABLE = "deletable"
NOT_DELETABLE = "not_deletable"
UNKNOWN_BUDGET = "unknown_budget"


@dataclass(frozen=True)
class DeletabilityVerdict:
    status: str
    witness: CorrespondenceAssignment | None = None
    checked_assignments: int = 0
    method: str = ""
    min_count: int | None = None

    def __post_init__(self):
        if (self.witness is not None) != (self.status == NOT_DELETABLE):
            raise ValueError("a witness is present exactly when the verdict is not_deletable")

    @property
    def deletable(self) -> bool:
        return self.status == DELETABLE

    def to_json(self) -> dict:
        from .io import assignment_to_json

        out = {
            "status": self.status,
            "checked_assignments": self.checked_assignments,
            "method": self.method,
        }
        if self.min_count is not None:
            out["min_count"] = str(self.min_count)
        if self.witness is not None:
            out["witness"] = assignment_to_json(self.witness)
        return out


def _vertex_set(g: Graph, h) -> set[int]:
    if isinstance(h, (SubgraphRef, Graph)):
        ref = _as_subgraph(g, h)
        if not ref.is_induced:
            raise GraphError("h must be an induced subgraph")
        return set(ref.vertex_subset)
    hv = set(h)
    if not hv <= set(g.vertices):
        raise GraphError("h is not a vertex subset of g")
    return hv


def _with_peeled(core_witness: CorrespondenceAssignment, sizes: Mapping[int, int]) -> CorrespondenceAssignment:
    lists = {u: frozenset(range(s)) for u, s in sizes.items()}
    lists.update(core_witness.lists)
    return CorrespondenceAssignment(lists, core_witness.matchings)


def is_deletable(
    g: Graph,
    h: SubgraphRef | Graph | Iterable[int],
    r: int,
    budget: int = 10**6,
    *,
    seed: int = 0,
    samples: int = 2000,
) -> DeletabilityVerdict:
    """Decide whether the induced subgraph ``h`` is ``r``-correspondence-deletable.

    Vertices that can always be coloured last are peeled away first; the
    remaining core is checked against every gauge-fixed canonical assignment.
    If that family exceeds ``budget``, ``samples`` seeded random assignments
    are tried before reporting ``unknown_budget``.
    """
    hv = _vertex_set(g, h)
    if not hv:
        raise GraphError("h must be non-empty")
    sizes = required_list_sizes(g, hv, r)
    for u, s in sizes.items():
        if s == 0:
            lists = {x: frozenset(range(sz)) for x, sz in sizes.items()}
            return DeletabilityVerdict(NOT_DELETABLE, CorrespondenceAssignment(lists), 1, "empty_list")
    hg = g.induced(hv)
    _, _, core = peel(hg, sizes)
    if not core:
        return DeletabilityVerdict(DELETABLE, None, 0, "peeling")
    cg = hg.induced(core)
    family = CanonicalFamily(cg, {u: sizes[u] for u in core})
    total = family.size()
    if total <= budget:
        checked = 0
        for a in family:
            checked += 1
            if find_colouring(cg, a) is None:
                return DeletabilityVerdict(NOT_DELETABLE, _with_peeled(a, sizes), checked, "exhaustive")
        return DeletabilityVerdict(DELETABLE, None, checked, "exhaustive")
    rng = random.Random(seed)
    for i in range(samples):
        a = family.sample(rng)
        if find_colouring(cg, a) is None:
            return DeletabilityVerdict(NOT_DELETABLE, _with_peeled(a, sizes), i + 1, "random_falsification")
    return DeletabilityVerdict(UNKNOWN_BUDGET, None, samples, "random_falsification")


def is_exponentially_deletable(
    g: Graph,
    h: SubgraphRef | Graph | Iterable[int],
    r: int,
    epsilon,
    budget: int = 10**6,
    *,
    seed: int = 0,
    samples: int = 2000,
) -> DeletabilityVerdict:
    """Whether every admissible assignment leaves at least ``2^(eps v(H))`` colourings."""
    from .bounds import Threshold

    hv = _vertex_set(g, h)
    if not hv:
        raise GraphError("h must be non-empty")
    eps = parse_rational(epsilon)
    threshold = Threshold(2, eps * len(hv))
    need = threshold.minimal_integer()
    sizes = required_list_sizes(g, hv, r)
    hg = g.induced(hv)
    family = CanonicalFamily(hg, sizes)
    if any(s == 0 for s in sizes.values()):
        if need > 0:
            return DeletabilityVerdict(NOT_DELETABLE, next(iter(family)), 1, "empty_list", 0)
    order, slack, core = peel(hg, sizes)
    if not core and threshold.is_met_by(math.prod(slack)):
        return DeletabilityVerdict(DELETABLE, None, 0, "peeling_product", math.prod(slack))
    total = family.size()
    if total <= budget:
        checked = 0
        best = None
        for a in family:
            checked += 1
            res = count_colourings(hg, a, limit=need)
            if res.count < need:
                return DeletabilityVerdict(NOT_DELETABLE, a, checked, "exhaustive", res.count)
            best = res.count if best is None else min(best, res.count)
        return DeletabilityVerdict(DELETABLE, None, checked, "exhaustive", best)
    rng = random.Random(seed)
    for i in range(samples):
        a = family.sample(rng)
        res = count_colourings(hg, a, limit=need)
        if res.count < need:
            return DeletabilityVerdict(NOT_DELETABLE, a, i + 1, "random_falsification", res.count)
    return DeletabilityVerdict(UNKNOWN_BUDGET, None, samples, "random_falsification")


@dataclass(frozen=True)
class SearchResult:
    found: frozenset[int] | None
    exhaustive: bool
    checked: int

    def to_json(self) -> dict:
        return {
            "found": None if self.found is None else sorted(self.found),
            "exhaustive": self.exhaustive,
            "checked": self.checked,
        }


def deletable_subgraph_search(
    g: Graph,
    h: SubgraphRef | Graph | Iterable[int],
    r: int,
    budget: int = 10**6,
    *,
    cache: dict | None = None,
    max_candidates: int | None = None,
    seed: int = 0,
) -> SearchResult:
    """Smallest non-empty ``X`` outside ``V(h)`` with ``G[X]`` deletable.

    Candidates run by size and then lexicographically. ``exhaustive`` is
    false when some candidate was undecided or ``max_candidates`` cut the
    search short, in which case ``found is None`` means none within budget.
    ``cache`` maps frozensets to verdicts and may be shared across calls on
    the same ``g`` and ``r``.
    """
    if isinstance(h, (SubgraphRef, Graph)):
        hv = set(_as_subgraph(g, h).vertex_subset)
    else:
        hv = set(h)
    rest = [v for v in g.vertices if v not in hv]
    cache = {} if cache is None else cache
    exhaustive = True
    checked = 0
    for size in range(1, len(rest) + 1):
        for xs in itertools.combinations(rest, size):
            if max_candidates is not None and checked >= max_candidates:
                return SearchResult(None, False, checked)
            x = frozenset(xs)
            if x not in cache:
                cache[x] = is_deletable(g, x, r, budget, seed=seed)
            checked += 1
            verdict = cache[x]
            if verdict.status == DELETABLE:
                return SearchResult(x, exhaustive, checked)
            if verdict.status == UNKNOWN_BUDGET:
                exhaustive = False
    return SearchResult(None, exhaustive, checked)


# -- criticality -------------------------------------------------------------


@dataclass(frozen=True)
class CriticalityResult:
    critical: bool
    certificate: dict[str, PartialColouring]
    missing: list[str]
    s_colourings: int

    def to_json(self) -> dict:
        return {
            "critical": self.critical,
            "certificate": {k: {str(v): c for v, c in phi.items()} for k, phi in self.certificate.items()},
            "missing": self.missing,
            "s_colourings": self.s_colourings,
        }


def _extends(graph: Graph, a: CorrespondenceAssignment, phi: Mapping[int, int]) -> bool:
    if not is_valid_colouring(graph.induced(phi.keys()), a, phi):
        return False
    return find_colouring(graph, a, phi) is not None


def is_critical(
    g: Graph, s: SubgraphRef | Graph, a: CorrespondenceAssignment, budget: int = 10**6
) -> CriticalityResult:
    """Whether ``g`` is ``s``-critical for ``a``.

    Every proper subgraph containing ``s`` lies in ``G - e`` for an edge
    ``e`` outside ``E(s)`` or in ``G - v`` for a vertex outside ``V(s)``, and a
    colouring of ``s`` extending to a subgraph extends to its subgraphs, so
    only those maximal subgraphs are examined. The certificate maps each of
    them to a colouring of ``s`` that extends to it but not to ``g``.
    """
    s = _as_subgraph(g, s)
    if s.v == g.v and s.e == g.e:
        raise GraphError("s must be a proper subgraph of g")
    sg = s.as_graph()
    maximal: list[tuple[str, Graph]] = []
    for e in sorted(g.edges - s.edge_subset):
        maximal.append((f"edge {e[0]},{e[1]}", g.remove_edges([e])))
    for v in g.vertices:
        if v not in s.vertex_subset:
            maximal.append((f"vertex {v}", g.remove_vertices([v])))
    stuck = []
    s_cols = 0
    for phi in enumerate_colourings(sg, a.restrict(s.vertex_subset)):
        s_cols += 1
        if s_cols > budget:
            raise BudgetExceeded(f"more than {budget} colourings of s", s_cols, budget)
        if not _extends(g, a, phi):
            stuck.append(phi)
    certificate: dict[str, PartialColouring] = {}
    missing = []
    for name, sub in maximal:
        for phi in stuck:
            if _extends(sub, a, phi):
                certificate[name] = phi
                break
        else:
            missing.append(name)
    return CriticalityResult(not missing and bool(maximal), certificate, missing, s_cols)


# -- planar disk inequality --------------------------------------------------


@dataclass(frozen=True)
class CheegerVerdict:
    holds: bool
    vacuous: bool
    interior: int
    boundary: int
    c: Fraction

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "vacuous": self.vacuous,
            "interior": self.interior,
            "boundary": self.boundary,
            "c": rational_json(self.c),
        }


def cheeger_disk_check(pg: PlaneGraph, boundary: Iterable[int] | None = None, c=52) -> CheegerVerdict:
    """``#interior <= c (|D| - 1)`` for boundary vertices ``D`` of the outer walk.

    ``D`` defaults to every outer-walk vertex; interior vertices are those
    of ``pg`` outside ``D``. An empty interior is reported as vacuously true.
    """
    c = parse_rational(c)
    outer = pg.outer_vertices()
    d = set(outer) if boundary is None else set(boundary)
    if not d <= outer:
        raise GraphError(f"boundary vertices {sorted(d - outer)} are not on the outer walk")
    interior = pg.graph.v - len(d)
    if interior == 0:
        return CheegerVerdict(True, True, 0, len(d), c)
    return CheegerVerdict(interior <= c * (len(d) - 1), False, interior, len(d), c)
