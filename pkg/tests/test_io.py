from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrcolour import corpus
from corrcolour.correspondence import CorrespondenceAssignment
from corrcolour.families import cycle, grid, wheel
from corrcolour.graph import Graph
from corrcolour.io import (
    IngestError,
    assignment_to_json,
    emit,
    embedding_to_json,
    ingest,
    ingest_text,
    parse_assignment,
    parse_embedding,
)
from helpers import random_assignment, random_graph


class TestGraph6Files:
    def test_round_trip_list(self, tmp_path):
        graphs = [cycle(5).graph, wheel(4).graph, Graph(range(3))]
        path = tmp_path / "g.g6"
        emit(graphs, path)
        assert ingest(path).graphs == graphs

    def test_header_and_blank_lines(self):
        text = ">>graph6<<\n\nDhc\n"
        assert ingest_text(text).graphs == [cycle(5).graph]

    def test_bad_line_is_located(self):
        with pytest.raises(IngestError) as err:
            ingest_text("Dhc\nD!!\n", source="f.g6")
        assert err.value.location == "f.g6:2"


class TestEmbeddings:
    @pytest.mark.parametrize("pg", [wheel(5), grid(2, 3), cycle(7)], ids=["wheel", "grid", "cycle"])
    def test_round_trip(self, pg):
        back = parse_embedding(json.loads(json.dumps(embedding_to_json(pg))))
        assert back.graph == pg.graph
        assert sorted(map(tuple, back.face_walks())) == sorted(map(tuple, pg.face_walks()))
        assert back.outer_vertices() == pg.outer_vertices()

    def test_euler_failure_is_reported(self):
        # K4 with a rotation system that gives a genus-one surface
        doc = {"rotation": {"0": [1, 2, 3], "1": [0, 2, 3], "2": [0, 1, 3], "3": [0, 1, 2]}}
        with pytest.raises(IngestError) as err:
            parse_embedding(doc, source="emb.json")
        assert err.value.location == "emb.json:rotation"

    def test_non_integer_vertex(self):
        with pytest.raises(IngestError) as err:
            parse_embedding({"rotation": {"a": []}}, source="x")
        assert err.value.location == "x:rotation.a"

    def test_missing_rotation(self):
        with pytest.raises(IngestError):
            parse_embedding({"outer_face": [0]})


class TestAssignments:
    def test_round_trip(self):
        a = CorrespondenceAssignment({0: [0, 1], 1: [1, 2]}, {(0, 1): [(0, 1), (1, 2)]}, 2)
        assert parse_assignment(json.loads(json.dumps(assignment_to_json(a)))) == a

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**9))
    def test_round_trip_random(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 7), 0.5)
        a = random_assignment(g, rng, {v: rng.randint(0, 4) for v in g.vertices}, density=0.7)
        assert parse_assignment(json.loads(emit(a)), g) == a

    def test_not_a_matching(self):
        doc = {"lists": {"0": [0, 1], "1": [0, 1]}, "matchings": {"0,1": [[0, 0], [0, 1]]}}
        with pytest.raises(IngestError) as err:
            parse_assignment(doc, source="a.json")
        assert err.value.location == "a.json:matchings.0,1"

    def test_colour_outside_list(self):
        doc = {"lists": {"0": [0], "1": [1]}, "matchings": {"0,1": [[0, 2]]}}
        with pytest.raises(IngestError) as err:
            parse_assignment(doc, source="a.json")
        assert err.value.location.startswith("a.json:matchings.")

    def test_repeated_colour(self):
        with pytest.raises(IngestError) as err:
            parse_assignment({"lists": {"3": [1, 1]}}, source="a")
        assert err.value.location == "a:lists.3"

    def test_duplicate_edge(self):
        doc = {"lists": {"0": [0], "1": [0]}, "matchings": {"0,1": [], "1,0": []}}
        with pytest.raises(IngestError):
            parse_assignment(doc)

    def test_identity_mode_needs_graph(self):
        with pytest.raises(IngestError):
            parse_assignment({"mode": "identity", "lists": {"0": [0]}})
        a = parse_assignment({"mode": "identity", "graph6": "Dhc", "lists": {str(v): [0, 1, 2] for v in range(5)}})
        assert a.matchings[(0, 1)] == frozenset({(0, 0), (1, 1), (2, 2)})

    def test_bad_json(self):
        with pytest.raises(IngestError) as err:
            ingest_text("{\"lists\": ", source="b.json")
        assert err.value.location.startswith("b.json:1:")


def test_mixed_document_list(tmp_path):
    pg = wheel(4)
    a = CorrespondenceAssignment({v: [0, 1, 2] for v in pg.graph.vertices},
                                 {e: [(0, 0)] for e in pg.graph.sorted_edges()})
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps([embedding_to_json(pg), assignment_to_json(a)]))
    data = ingest(path)
    assert data.embeddings[0].graph == pg.graph and data.assignments == [a]


def test_unreadable_file(tmp_path):
    with pytest.raises(IngestError):
        ingest(tmp_path / "missing.g6")


class TestCorpus:
    def test_sizes(self):
        by_n = lambda name: [sum(1 for g in corpus.load(name) if g.v == n) for n in range(1, 11)]
        assert by_n("planar_le8")[:8] == [1, 2, 4, 11, 33, 142, 822, 6966]
        assert by_n("girth5_planar_le9")[:9] == [1, 2, 3, 6, 11, 23, 48, 114, 292]
        assert by_n("girth5_outerplanar_le10") == [1, 2, 3, 6, 11, 23, 47, 107, 252, 647]

    def test_filters(self):
        assert len(corpus.load("planar_le8", max_vertices=4)) == 1 + 2 + 4 + 11
        assert all(g.is_connected() for g in corpus.load("planar_le8", max_vertices=5, connected=True))
        assert len(corpus.load("planar_le8", max_vertices=5, connected=True)) == 1 + 1 + 2 + 6 + 20  # K5 is the only non-planar graph on five vertices

    def test_unknown(self):
        with pytest.raises(KeyError):
            corpus.load("nope")
