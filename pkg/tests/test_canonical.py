from fractions import Fraction as F

import pytest

from cosmotope.canonical import (Pole, barycentric, facet_form, format_fraction,
                                 independence_check, polytope_canonical_value, sample_points,
                                 simplex_canonical_value, simplex_form)
from cosmotope.graphs import cycle_graph, path_graph, root_order, star_graph
from cosmotope.polytope import generators
from cosmotope.toric import shuffled_good_order, specialized_order, t, y, z, ze
from cosmotope.triangulation import Triangulation, enumerate_facets

I1 = path_graph(1)


def test_segment_pieces_add_up():
    # [0,2] cut at 1, homogenized; evaluated at x = 1/2
    p = (1, F(1, 2))
    left = simplex_canonical_value(simplex_form([(1, 0), (1, 1)]), p)
    right = simplex_canonical_value(simplex_form([(1, 1), (1, 2)]), p)
    whole = simplex_canonical_value(simplex_form([(1, 0), (1, 2)]), p)
    assert (left, right) == (4, F(-4, 3))
    assert left + right == whole == F(8, 3)
    x = F(1, 2)
    assert whole == 2 / (x * (2 - x))


def test_unit_facet_value():
    table = generators(I1)
    s = facet_form({z(1), z(2), ze(1, 2)}, table)
    assert s.volume == 1
    assert simplex_canonical_value(s, (F(1, 2), F(1, 4), F(1, 4))) == 32


def test_barycentric_coordinates():
    table = generators(I1)
    s = facet_form({y(1, 2), y(2, 1), t(1, 2)}, table)
    assert s.volume == 4
    assert barycentric(s, (F(1, 3), F(1, 3), F(1, 3))) == [F(1, 3)] * 3
    assert barycentric(s, table[y(1, 2)]) in ([1, 0, 0], [0, 1, 0], [0, 0, 1])
    with pytest.raises(ValueError):
        barycentric(s, (1, 0))


def test_i1_pieces_match_direct_simplex():
    table = generators(I1)
    outer = simplex_form([table[y(1, 2)], table[y(2, 1)], table[t(1, 2)]])
    tri = enumerate_facets(I1, specialized_order(I1, "path"))
    bary = (F(1, 3), F(1, 3), F(1, 3))
    assert simplex_canonical_value(outer, bary) == F(27, 4)
    assert polytope_canonical_value(tri, table, bary) == F(27, 4)
    for p in sample_points(I1, 50, seed=7):
        assert polytope_canonical_value(tri, table, p) == simplex_canonical_value(outer, p)


GRAPHS = {
    "I1": (path_graph(1), "path"),
    "I2": (path_graph(2), "path"),
    "I3": (path_graph(3), "path"),
    "C3": (cycle_graph(3), "cycle"),
    "C4": (cycle_graph(4), "cycle"),
    "star3": (star_graph(3), "tree"),
}


@pytest.mark.parametrize("name", list(GRAPHS))
def test_order_independence(name):
    g, kind = GRAPHS[name]
    base = specialized_order(g, kind, 1) if kind == "tree" else specialized_order(g, kind)
    orders = [base, shuffled_good_order(g, 1)]
    rep = independence_check(g, orders, sample_points(g, 20, seed=0))
    assert rep.passed, rep.disagreements
    assert len(rep.values) == 20


def test_corrupted_triangulation_disagrees():
    g = path_graph(2)
    good = enumerate_facets(g, specialized_order(g, "path"))
    broken = Triangulation(g, good.facets[1:], "broken")
    rep = independence_check(g, [], sample_points(g, 5, seed=2), [good, broken])
    assert not rep.passed
    assert len(rep.disagreements) == 5


def test_pole_on_internal_wall():
    tri = enumerate_facets(I1, specialized_order(I1, "path"))
    with pytest.raises(Pole) as info:
        polytope_canonical_value(tri, generators(I1), (F(1, 2), F(1, 2), 0))
    assert len(info.value.facets) >= 2


def test_degenerate_simplex_rejected():
    with pytest.raises(ZeroDivisionError):
        simplex_form([(1, 0), (2, 0)])


def test_sampling_is_deterministic():
    g = cycle_graph(3)
    assert sample_points(g, 4, 9) == sample_points(g, 4, 9)
    assert sample_points(g, 4, 9) != sample_points(g, 4, 10)
    assert all(sum(p) == 1 for p in sample_points(g, 4, 9))
    with pytest.raises(ValueError):
        sample_points(g, 0, 1)


def test_format_fraction():
    assert format_fraction(F(27, 4)) == "27/4"
    assert format_fraction(3) == "3/1"
