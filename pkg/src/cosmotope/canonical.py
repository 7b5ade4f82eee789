"""Canonical rational function of C_G evaluated as a sum over triangulation facets.

For a simplex with point matrix M (rows are its lattice points) and a point p
on the hyperplane sum(x) = 1, the barycentric coordinates are lam = p M^-1 and
the simplex contributes 1 / (|det M| * prod(lam)). Summing over the facets of
any triangulation gives the same value; internal walls cancel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graphs import Graph
from .linalg import det, inverse, solve_left
from .polytope import generators
from .toric import TermOrder
from .triangulation import (Triangulation, enumerate_facets, point_matrix,
                            random_interior_points)


class Pole(ArithmeticError):
    """The evaluation point lies on a wall of one or more simplices."""

    def __init__(self, message: str, facets=()):
        super().__init__(message)
        self.facets = list(facets)


@dataclass(frozen=True)
class SimplexForm:
    points: tuple
    inverse: tuple = field(repr=False)
    volume: int = 1
    facet: frozenset | None = None


def simplex_form(points: Sequence[Sequence[int]], facet=None) -> SimplexForm:
    rows = tuple(tuple(r) for r in points)
    v = abs(det(rows))
    if v == 0:
        raise ZeroDivisionError("degenerate simplex")
    return SimplexForm(rows, tuple(tuple(r) for r in inverse(rows)), v, facet)


def facet_form(f, table: dict) -> SimplexForm:
    return simplex_form(point_matrix(f, table), frozenset(f))


def barycentric(s: SimplexForm, p: Sequence) -> list[Fraction]:
    if len(p) != len(s.points):
        raise ValueError("point and simplex dimensions differ")
    return [Fraction(x) for x in solve_left([Fraction(x) for x in p], s.inverse)]


def simplex_canonical_value(s: SimplexForm, p: Sequence) -> Fraction:
    lam = barycentric(s, p)
    prod = Fraction(s.volume)
    for x in lam:
        if x == 0:
            raise Pole("point lies on a wall of the simplex", [s.facet])
        prod *= x
    return 1 / prod


def polytope_canonical_value(t: Triangulation, table: dict, p: Sequence,
                             forms: Sequence[SimplexForm] | None = None) -> Fraction:
    forms = forms if forms is not None else [facet_form(f, table) for f in t.facets]
    total = Fraction(0)
    walls = []
    for s in forms:
        try:
            total += simplex_canonical_value(s, p)
        except Pole:
            walls.append(s.facet)
    if walls:
        raise Pole(f"point lies on walls of {len(walls)} facets", walls)
    return total


def sample_points(g: Graph, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    if count < 1:
        raise ValueError("count must be positive")
    return random_interior_points(g, count, seed)


@dataclass
class IndependenceReport:
    passed: bool
    values: list = field(default_factory=list)  # per point, per order
    disagreements: list = field(default_factory=list)


def independence_check(g: Graph, orders: Sequence[TermOrder], points: Sequence,
                       triangulations: Sequence[Triangulation] | None = None) -> IndependenceReport:
    """Exact agreement of the facet sums across triangulations from several orders."""
    table = generators(g)
    tris = triangulations or [enumerate_facets(g, o) for o in orders]
    forms = [[facet_form(f, table) for f in t.facets] for t in tris]
    rep = IndependenceReport(True)
    for k, p in enumerate(points):
        vals = [polytope_canonical_value(t, table, p, fs) for t, fs in zip(tris, forms)]
        rep.values.append(vals)
        if any(v != vals[0] for v in vals):
            rep.passed = False
            rep.disagreements.append((k, vals))
    return rep


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
