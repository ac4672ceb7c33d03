from __future__ import annotations

import pickle
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrcolour.errors import GraphError
from corrcolour.families import complete_graph, cycle, petersen, star, wheel
from corrcolour.graph import (
    INFINITY,
    Graph,
    SubgraphRef,
    biconnected_components,
    diff_counts,
    edge_girth,
    girth,
    is_independent,
    neighbours_in,
    vertex_girth,
)
from helpers import to_nx


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(range(n), chosen)


def nx_girth(g: Graph) -> float:
    best = INFINITY
    for c in nx.simple_cycles(to_nx(g)):
        if len(c) >= 3:
            best = min(best, len(c))
    return best


def nx_edge_girth(g: Graph, e) -> float:
    h = to_nx(g)
    h.remove_edge(*e)
    try:
        return nx.shortest_path_length(h, *e) + 1
    except nx.NetworkXNoPath:
        return INFINITY


class TestGraph:
    def test_rejects_loops_and_bad_ids(self):
        with pytest.raises(GraphError):
            Graph([0, 1], [(0, 0)])
        with pytest.raises(GraphError):
            Graph([-1], [])

    def test_edge_endpoints_become_vertices(self):
        assert Graph([0, 1], [(0, 2)]).vertices == (0, 1, 2)

    def test_parallel_edges_collapse_to_one(self):
        g = Graph([0, 1], [(0, 1), (1, 0)])
        assert g.e == 1 and g.has_edge(1, 0)

    def test_vertex_cap(self):
        with pytest.raises(GraphError):
            Graph(range(65), [])

    def test_pickle_round_trip(self):
        g = wheel(5).graph
        assert pickle.loads(pickle.dumps(g)) == g

    def test_induced_and_removal(self):
        g = complete_graph(4)
        assert g.induced([0, 1, 2]).e == 3
        assert g.remove_vertices([3]) == g.induced([0, 1, 2])
        assert g.remove_edges([(0, 1)]).e == 5

    def test_components(self):
        g = Graph(range(5), [(0, 1), (3, 4)])
        assert sorted(map(sorted, g.components())) == [[0, 1], [2], [3, 4]]
        assert not g.is_connected()


class TestGirth:
    def test_triangle(self):
        assert girth(cycle(3).graph) == 3

    def test_path_is_infinite(self):
        assert girth(Graph(range(4), [(0, 1), (1, 2), (2, 3)])) == INFINITY

    def test_petersen(self):
        assert girth(petersen()) == 5

    def test_edge_girth_triangle_with_pendant(self):
        g = Graph(range(4), [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert edge_girth(g, (0, 1)) == 3
        assert edge_girth(g, (2, 3)) == INFINITY

    def test_edge_girth_chord_of_c4(self):
        g = Graph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        assert edge_girth(g, (0, 2)) == 3

    def test_edge_girth_unknown_edge(self):
        with pytest.raises(GraphError):
            edge_girth(cycle(5).graph, (0, 2))

    def test_vertex_girth_examples(self):
        assert vertex_girth(wheel(5).graph, 5) == 3
        assert vertex_girth(star(4).graph, 1) == INFINITY
        assert vertex_girth(cycle(5).graph, 2) == 5

    def test_infinity_orders_above_integers(self):
        assert INFINITY > 10**9

    @settings(max_examples=150, deadline=None)
    @given(graphs())
    def test_girth_matches_cycle_enumeration(self, g):
        assert girth(g) == nx_girth(g)

    @settings(max_examples=150, deadline=None)
    @given(graphs())
    def test_girth_is_min_edge_girth_and_vertex_girth_min_incident(self, g):
        eg = {e: edge_girth(g, e) for e in g.edges}
        for e, val in eg.items():
            assert val == nx_edge_girth(g, e)
        assert girth(g) == min(eg.values(), default=INFINITY)
        for v in g.vertices:
            incident = [eg[e] for e in eg if v in e]
            assert vertex_girth(g, v) == min(incident, default=INFINITY)


class TestSubgraphs:
    def test_diff_counts_examples(self):
        k4 = complete_graph(4)
        assert diff_counts(k4, SubgraphRef.whole(k4)) == (0, 0)
        assert diff_counts(k4, SubgraphRef.induced(k4, [0, 1, 2])) == (1, 3)
        c5 = cycle(5).graph
        assert diff_counts(c5, SubgraphRef.induced(c5, [0])) == (4, 5)

    def test_not_a_subgraph(self):
        with pytest.raises(GraphError):
            diff_counts(cycle(5).graph, Graph([0, 2], [(0, 2)]))

    def test_edge_endpoints_must_be_in_vertex_subset(self):
        g = cycle(4).graph
        with pytest.raises(GraphError):
            SubgraphRef(g, frozenset([0]), frozenset([(0, 1)]))

    def test_induced_flag(self):
        g = cycle(4).graph
        assert SubgraphRef.induced(g, [0, 1]).is_induced
        assert not SubgraphRef.from_edges(g, [], [0, 1]).is_induced

    @settings(max_examples=100, deadline=None)
    @given(graphs(), st.randoms(use_true_random=False))
    def test_diff_counts_additive_on_chains(self, g, rnd):
        vs = list(g.vertices)
        hv = [v for v in vs if rnd.random() < 0.7]
        sv = [v for v in hv if rnd.random() < 0.7]
        h = SubgraphRef.induced(g, hv)
        s = SubgraphRef.induced(g, sv)
        gh, hs, gs = diff_counts(g, h), diff_counts(h.as_graph(), s.as_graph()), diff_counts(g, s)
        assert gs == (gh[0] + hs[0], gh[1] + hs[1])


class TestSmallPredicates:
    def test_is_independent(self):
        c6 = cycle(6).graph
        assert is_independent(c6, [0, 2, 4])
        assert not is_independent(c6, [0, 1])
        assert is_independent(c6, [])

    def test_neighbours_in(self):
        w5 = wheel(5).graph
        assert neighbours_in(w5, 5, range(5)) == 5
        assert neighbours_in(Graph([0, 1], []), 0, [1]) == 0
        assert neighbours_in(complete_graph(4), 0, [1, 2, 3]) == 3


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_biconnected_components_match_networkx(g):
    ours = sorted(sorted(b) for b in biconnected_components(g))
    theirs = sorted(sorted(tuple(sorted(e)) for e in comp) for comp in nx.biconnected_component_edges(to_nx(g)))
    assert ours == theirs


def test_random_graph_helper_is_seeded():
    from helpers import random_graph

    assert random_graph(random.Random(3), 6, 0.5) == random_graph(random.Random(3), 6, 0.5)
