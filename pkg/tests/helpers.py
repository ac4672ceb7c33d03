"""Independent oracles and instance builders shared by the tests.

Nothing here calls the package's search engine: counts are taken by plain
``itertools.product`` enumeration and planarity comes from networkx.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Mapping

import networkx as nx

from corrcolour.correspondence import CorrespondenceAssignment
from corrcolour.graph import Graph, edge_key
from corrcolour.plane import PlaneGraph


def brute_count(g: Graph, a: CorrespondenceAssignment, fixed: Mapping[int, int] | None = None) -> int:
    fixed = dict(fixed or {})
    order = list(g.vertices)
    choices = [[fixed[v]] if v in fixed else sorted(a.lists[v]) for v in order]
    n = 0
    for combo in itertools.product(*choices):
        col = dict(zip(order, combo))
        if all((col[u], col[w]) not in a.matching(u, w) for u, w in g.edges):
            n += 1
    return n


def brute_list_count(g: Graph, lists: Mapping[int, set[int]]) -> int:
    """Proper list colourings, with no correspondence machinery involved."""
    order = list(g.vertices)
    n = 0
    for combo in itertools.product(*[sorted(lists[v]) for v in order]):
        col = dict(zip(order, combo))
        if all(col[u] != col[w] for u, w in g.edges):
            n += 1
    return n


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    return Graph(h.nodes, h.edges)


def nx_plane(g: Graph | nx.Graph) -> PlaneGraph:
    h = to_nx(g) if isinstance(g, Graph) else g
    ok, emb = nx.check_planarity(h)
    assert ok
    return PlaneGraph({v: list(emb.neighbors_cw_order(v)) for v in h.nodes})


def outerplane(g: Graph) -> PlaneGraph:
    """An embedding of an outerplanar graph with every vertex on an outer walk."""
    apex = max(g.vertices, default=-1) + 1
    h = to_nx(g)
    h.add_node(apex)
    h.add_edges_from((apex, v) for v in g.vertices)
    ok, emb = nx.check_planarity(h)
    assert ok, "not outerplanar"
    rot = {v: list(emb.neighbors_cw_order(v)) for v in h.nodes}
    pg = PlaneGraph(rot)
    apex_face = next(f for f in pg.faces() if any(d[0] == apex for d in f))
    pg = PlaneGraph(rot, outer_darts=apex_face)
    pg = pg.delete_edges([(apex, v) for v in g.vertices])
    pg = pg.restrict(g.vertices)
    assert pg.outer_vertices() == frozenset(g.vertices)
    return pg


def with_outer_face(pg: PlaneGraph, walk: list[int]) -> PlaneGraph:
    return PlaneGraph(pg.rotation, outer_darts=set(zip(walk, walk[1:] + walk[:1])))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_assignment(
    g: Graph, rng: random.Random, sizes: Mapping[int, int], palette: int = 6, density: float = 1.0
) -> CorrespondenceAssignment:
    """Random lists of the given sizes with random partial matchings."""
    lists = {v: rng.sample(range(palette), sizes[v]) for v in g.vertices}
    m = {}
    for u, w in g.edges:
        lu, lw = list(lists[u]), list(lists[w])
        rng.shuffle(lu)
        rng.shuffle(lw)
        m[edge_key(u, w)] = [p for p in zip(lu, lw) if rng.random() < density]
    return CorrespondenceAssignment(lists, m)
