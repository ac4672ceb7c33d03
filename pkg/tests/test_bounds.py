from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corrcolour.bounds import (
    Threshold,
    alon_furedi,
    alon_furedi_parameters,
    birkhoff_lewis_bound,
    birkhoff_lewis_threshold,
    euler_girth_slack,
    extension_3cc_exponent,
    extension_5cc_exponent,
    local_girth_bound,
    thm_extension_3cc_bound,
    thm_extension_5cc_bound,
    thm_planar_3cc_girth5_bound,
    thm_planar_5cc_bound,
    verify_bound,
)
from corrcolour.correspondence import from_lists
from corrcolour.counting import CountResult, count_colourings
from corrcolour.families import complete, cycle, icosahedron, path, wheel
from corrcolour.graph import Graph, SubgraphRef


class TestThreshold:
    def test_zero_vertices(self):
        t = thm_planar_5cc_bound(0)
        assert t.minimal_integer() == 1 and t.is_met_by(1) and not t.is_met_by(0)

    def test_sixty_seven_vertices(self):
        t = thm_planar_5cc_bound(67)
        assert t.minimal_integer() == 2

    def test_fractional_exponent_rounds_up(self):
        assert thm_planar_5cc_bound(5).minimal_integer() == 2
        assert thm_planar_3cc_girth5_bound(282 * 3).minimal_integer() == 8
        assert thm_planar_3cc_girth5_bound(282 * 3 + 1).minimal_integer() == 9

    def test_negative_exponent(self):
        t = Threshold(2, Fraction(-3, 2))
        assert t.minimal_integer() == 1
        assert Threshold(2, Fraction(-3, 2), Fraction(4)).minimal_integer() == 2

    def test_coefficient(self):
        t = Threshold(2, 2, Fraction(60))
        assert t.minimal_integer() == 240 and not t.is_met_by(239)

    def test_zero_coefficient(self):
        assert Threshold(2, 5, 0).minimal_integer() == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            Threshold(0, 1)
        with pytest.raises(ValueError):
            Threshold(2, 1, -1)
        with pytest.raises(ValueError):
            Threshold(2, 1).is_met_by(-1)
        with pytest.raises(ValueError):
            thm_planar_5cc_bound(-1)

    def test_json(self):
        doc = Threshold(2, Fraction(5, 67)).to_json()
        assert doc == {"base": 2, "exponent": {"num": 5, "den": 67}, "coefficient": {"num": 1, "den": 1}}

    @given(
        st.integers(1, 7),
        st.fractions(min_value=-6, max_value=12, max_denominator=40),
        st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8),
    )
    def test_minimal_integer_agrees_with_floats(self, base, exponent, coeff):
        t = Threshold(base, exponent, coeff)
        n = t.minimal_integer()
        value = float(t)
        assert t.is_met_by(n) and (n == 0 or not t.is_met_by(n - 1))
        if abs(value - round(value)) > 1e-9:
            assert n == max(0, math.ceil(value))


class TestExponents:
    def test_degree_five_vertex(self):
        # v_diff = 1, e_diff = 5: def_3 = 2, def_5 = 5
        assert extension_5cc_exponent(1, -3 * 1 + 4) == Fraction(1 - 51, 67)

    def test_standard_reductions(self):
        assert extension_5cc_exponent(5, -3) == Fraction(5 + 153, 67)
        assert extension_5cc_exponent(1, -2) == Fraction(103, 67)
        assert extension_3cc_exponent(1, -2) == Fraction(179, 282)
        assert extension_3cc_exponent(2, -4) == Fraction(358, 282)

    def test_bound_from_graph(self):
        g = wheel(5).graph
        s = SubgraphRef.induced(g, range(5))
        t = thm_extension_5cc_bound(g, s)
        assert t.exponent == Fraction(1 - 51 * 2, 67)
        t3 = thm_extension_3cc_bound(path(3).graph, SubgraphRef.induced(path(3).graph, [0, 1]))
        assert t3.exponent == Fraction(1 - 89 * (3 - 5), 282)

    def test_planar_bounds(self):
        assert thm_planar_5cc_bound(134).exponent == 2
        assert thm_planar_3cc_girth5_bound(141).exponent == Fraction(1, 2)


class TestAlonFuredi:
    def test_path_on_three(self):
        g = path(3).graph
        lists = {v: range(3) for v in g.vertices}
        s_sum, n, d, t = alon_furedi_parameters(g, lists)
        th = alon_furedi(s_sum, n, d, t)
        assert th.minimal_integer() == 9
        assert count_colourings(g, from_lists(g, lists)).count == 12

    @pytest.mark.parametrize("v", range(1, 8))
    def test_forest(self, v):
        g = path(v).graph
        th = alon_furedi(*alon_furedi_parameters(g, {u: range(3) for u in g.vertices}))
        assert th == Threshold(3, Fraction(v + 1, 2))
        assert th.is_met_by(3 * 2 ** (v - 1))

    def test_t_below_two(self):
        with pytest.raises(ValueError):
            alon_furedi(3, 3, 0, 1)


class TestOtherBounds:
    def test_local_girth(self):
        assert local_girth_bound(12).minimal_integer() == 5
        assert local_girth_bound(0).minimal_integer() == 1

    def test_birkhoff_lewis(self):
        assert [birkhoff_lewis_bound(v) for v in (3, 4, 5)] == [60, 120, 240]
        assert birkhoff_lewis_threshold(4).minimal_integer() == 120
        with pytest.raises(ValueError):
            birkhoff_lewis_bound(2)

    def test_k4_meets_birkhoff_lewis_exactly(self):
        g = complete(4).graph
        n = count_colourings(g, from_lists(g, {v: range(5) for v in g.vertices})).count
        assert n == 120 == birkhoff_lewis_bound(4)


class TestEulerGirthSlack:
    def test_triangle(self):
        assert euler_girth_slack(complete(3)) == 2

    def test_five_cycle(self):
        assert euler_girth_slack(cycle(5).graph) == 2

    def test_pendant_edge(self):
        g = Graph(range(4), [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert euler_girth_slack(g) == 2

    def test_triangulation(self):
        assert euler_girth_slack(icosahedron()) == 2

    def test_wheel(self):
        assert euler_girth_slack(wheel(6)) == 7 - Fraction(12, 3)

    def test_two_triangles_sharing_a_vertex(self):
        g = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        assert euler_girth_slack(g) == 5 - 6 * Fraction(1, 3)

    def test_forest(self):
        with pytest.raises(ValueError):
            euler_girth_slack(path(4).graph)


class TestVerify:
    def test_exact_pass_and_fail(self):
        t = Threshold(2, 2, Fraction(60))
        assert verify_bound(240, t).holds
        assert verify_bound(239, t).holds is False

    def test_truncated(self):
        t = Threshold(2, 10)
        assert verify_bound(CountResult(1024, explored_nodes=5, truncated=True), t).holds is True
        assert verify_bound(CountResult(10, explored_nodes=5, truncated=True), t).holds is None
        assert verify_bound(CountResult(10, explored_nodes=5, truncated=False), t).holds is False

    def test_vacuous(self):
        assert verify_bound(1, Threshold(2, -1)).vacuous
        assert not verify_bound(1, Threshold(2, 1)).vacuous

    def test_json(self):
        doc = verify_bound(10**30, thm_planar_5cc_bound(100), "thm").to_json()
        assert doc["oracle_count"] == str(10**30) and doc["exponent_num"] == 100 and doc["exponent_den"] == 67
        assert doc["comparison_method"] == "cross-power integer comparison"
