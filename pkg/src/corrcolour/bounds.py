"""Closed-form lower bounds and their exact comparison with counts.

A bound ``coefficient * base^(p/q)`` is met by an integer count ``N`` iff
``(N * cd)^q * base^max(0, -p) >= cn^q * base^max(0, p)`` where
``coefficient = cn/cd``. Everything is a big-integer comparison.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .counting import CountResult
from .graph import INFINITY, Graph, SubgraphRef, edge_girth, girth
from .plane import PlaneGraph
from .structure import deficiency, rational_json

METHOD = "cross-power integer comparison"


@dataclass(frozen=True)
class Threshold:
    """The real number ``coefficient * base ** exponent``."""

    base: int
    exponent: Fraction
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.base < 1:
            raise ValueError("base must be a positive integer")
        if self.coefficient < 0:
            raise ValueError("coefficient must be non-negative")

    def _sides(self, n: int) -> tuple[int, int]:
        p, q = self.exponent.numerator, self.exponent.denominator
        cn, cd = self.coefficient.numerator, self.coefficient.denominator
        lhs = (n * cd) ** q * self.base ** max(0, -p)
        rhs = cn**q * self.base ** max(0, p)
        return lhs, rhs

    def is_met_by(self, count: int) -> bool:
        if count < 0:
            raise ValueError("counts are non-negative")
        lhs, rhs = self._sides(count)
        return lhs >= rhs

    def minimal_integer(self) -> int:
        """Smallest non-negative integer meeting the threshold."""
        if self.is_met_by(0):
            return 0
        hi = 1
        while not self.is_met_by(hi):
            hi *= 2
        lo = hi // 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.is_met_by(mid):
                hi = mid
            else:
                lo = mid
        return hi

    def __float__(self) -> float:
        return float(self.coefficient) * float(self.base) ** float(self.exponent)

    def describe(self) -> str:
        coeff = "" if self.coefficient == 1 else f"{self.coefficient}*"
        return f"{coeff}{self.base}^({self.exponent})"

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "exponent": rational_json(self.exponent),
            "coefficient": rational_json(self.coefficient),
        }


def thm_planar_5cc_bound(v: int) -> Threshold:
    """``2^(v/67)`` colourings for any 5-correspondence assignment of a planar graph."""
    if v < 0:
        raise ValueError("v must be non-negative")
    return Threshold(2, Fraction(v, 67))


def thm_planar_3cc_girth5_bound(v: int) -> Threshold:
    """``2^(v/282)`` colourings for 3-correspondence assignments at girth five."""
    if v < 0:
        raise ValueError("v must be non-negative")
    return Threshold(2, Fraction(v, 282))


def extension_5cc_exponent(v_diff: int, def3: int) -> Fraction:
    return Fraction(v_diff - 51 * def3, 67)


def extension_3cc_exponent(v_diff: int, def5: int) -> Fraction:
    return Fraction(v_diff - 89 * def5, 282)


def thm_extension_5cc_bound(g: Graph, s: SubgraphRef | Graph) -> Threshold:
    """``2^((v(G|S) - 51 def_3(G|S)) / 67)`` extensions of a colouring of ``s``."""
    rep = deficiency(g, s, 3)
    return Threshold(2, extension_5cc_exponent(rep.v_diff, rep.def_g))


def thm_extension_3cc_bound(g: Graph, s: SubgraphRef | Graph) -> Threshold:
    """``2^((v(G|S) - 89 def_5(G|S)) / 282)`` extensions at girth five."""
    rep = deficiency(g, s, 5)
    return Threshold(2, extension_3cc_exponent(rep.v_diff, rep.def_g))


def alon_furedi(s_sum: int, n: int, d: int, t: int) -> Threshold:
    """``t^((S - n - d) / (t - 1))`` non-vanishing points, for ``t >= 2``."""
    if t < 2:
        raise ValueError("the Alon-Furedi bound needs t >= 2")
    return Threshold(t, Fraction(s_sum - n - d, t - 1))


def alon_furedi_parameters(g: Graph, lists: Mapping[int, object]) -> tuple[int, int, int, int]:
    """``(S, n, d, t)`` for the graph polynomial: sum and max of list sizes, ``v``, ``e``."""
    sizes = [len(lists[v]) for v in g.vertices]
    return sum(sizes), g.v, g.e, max(sizes, default=0)


def local_girth_bound(v: int) -> Threshold:
    """``5^(v/12)`` colourings under a local girth list assignment."""
    if v < 0:
        raise ValueError("v must be non-negative")
    return Threshold(5, Fraction(v, 12))


def birkhoff_lewis_bound(v: int) -> int:
    """``60 * 2^(v-3)`` five-colourings of a planar graph on ``v >= 3`` vertices."""
    if v < 3:
        raise ValueError("the bound needs at least 3 vertices")
    return 60 * 2 ** (v - 3)


def birkhoff_lewis_threshold(v: int) -> Threshold:
    return Threshold(2, Fraction(v - 3), Fraction(60)) if v >= 3 else Threshold(1, 0, birkhoff_lewis_bound(v))


def euler_girth_slack(g: PlaneGraph | Graph) -> Fraction:
    """``v(G) - sum_e (1 - 2/g(e))`` with ``2/g(e) = 0`` for edges on no cycle."""
    graph = g.graph if isinstance(g, PlaneGraph) else g
    if girth(graph) == INFINITY:
        raise ValueError("the graph must contain a cycle")
    total = Fraction(graph.v)
    for e in graph.sorted_edges():
        ge = edge_girth(graph, e)
        total -= 1 if ge == INFINITY else 1 - Fraction(2, int(ge))
    return total


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of comparing a count with a threshold.

    ``holds`` is ``None`` when a truncated count (a lower bound) falls short,
    since the true count might still meet the threshold.
    """

    bound_name: str
    threshold: Threshold
    oracle_count: int
    truncated: bool
    holds: bool | None
    vacuous: bool
    comparison_method: str = METHOD

    @property
    def exponent_num(self) -> int:
        return self.threshold.exponent.numerator

    @property
    def exponent_den(self) -> int:
        return self.threshold.exponent.denominator

    def to_json(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "base": self.threshold.base,
            "exponent_num": self.exponent_num,
            "exponent_den": self.exponent_den,
            "coefficient": rational_json(self.threshold.coefficient),
            "oracle_count": str(self.oracle_count),
            "truncated": self.truncated,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "comparison_method": self.comparison_method,
        }


def verify_bound(count: CountResult | int, threshold: Threshold, bound_name: str = "") -> BoundVerdict:
    if isinstance(count, CountResult):
        n, truncated = count.count, count.truncated
    else:
        n, truncated = int(count), False
    met = threshold.is_met_by(n)
    vacuous = threshold.exponent < 0 and threshold.coefficient <= 1 and n >= 1
    holds: bool | None = met if (met or not truncated) else None
    return BoundVerdict(bound_name, threshold, n, truncated, holds, vacuous)
