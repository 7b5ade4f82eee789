from itertools import combinations

import pytest

from cosmotope.facets import decorate
from cosmotope.graphs import build_graph, cycle_graph, path_graph, star_graph
from cosmotope.polytope import GuardExceeded, generators, hstar_ehrhart
from cosmotope.toric import (NotGoodOrderError, TermOrder, all_generators, shuffled_good_order,
                             specialized_order, t, y, z, ze)
from cosmotope.triangulation import (Triangulation, enumerate_facets, facets_avoiding,
                                     hstar_from_triangulation, is_unimodular_simplex,
                                     path_interval_counts_ok, point_matrix,
                                     validate_triangulation)
from cosmotope.linalg import det

I1, I2, I3 = path_graph(1), path_graph(2), path_graph(3)
C3, C4 = cycle_graph(3), cycle_graph(4)


def tri(g, kind="auto"):
    if kind == "auto":
        kind = "cycle" if len(g.edges) == g.vertex_count else "path"
    return enumerate_facets(g, specialized_order(g, kind))


def test_i1_facets_exact():
    got = {frozenset(map(str, f)) for f in tri(I1).facets}
    assert got == {
        frozenset({"z1", "z2", "z[1,2]"}),
        frozenset({"z1", "z2", "t[1,2]"}),
        frozenset({"z1", "z[1,2]", "y[1,2]"}),
        frozenset({"z2", "z[1,2]", "y[2,1]"}),
    }


@pytest.mark.parametrize("g,count", [(I1, 4), (I2, 16), (I3, 64), (C3, 56), (C4, 240)])
def test_facet_counts(g, count):
    assert len(tri(g).facets) == count


def test_star_facet_count():
    g = star_graph(3)
    assert len(enumerate_facets(g, specialized_order(g, "tree", 1)).facets) == 64


def test_unimodularity_examples():
    table = generators(I1)
    assert is_unimodular_simplex({z(1), z(2), ze(1, 2)}, table)
    # two opposite arrows and the wave span a simplex of volume 4
    assert abs(det(point_matrix({y(1, 2), y(2, 1), t(1, 2)}, table))) == 4
    assert not is_unimodular_simplex({y(1, 2), y(2, 1), t(1, 2)}, table)
    with pytest.raises(ValueError):
        is_unimodular_simplex({z(1)}, table)


@pytest.mark.parametrize("name", ["I2", "C3", "I3"])
def test_every_facet_unimodular(name):
    g = {"I2": I2, "C3": C3, "I3": I3}[name]
    table = generators(g)
    assert all(is_unimodular_simplex(f, table) for f in tri(g).facets)


def test_validation_passes():
    assert validate_triangulation(tri(I2), I2, "path").passed
    rep = validate_triangulation(tri(C3), C3, "cycle")
    assert rep.passed, rep.failures


def test_validation_flags_missing_facet():
    full = tri(I2)
    broken = Triangulation(I2, full.facets[1:], full.order_descriptor)
    rep = validate_triangulation(broken, I2, "path", samples=400, seed=3)
    assert not rep.passed
    assert rep.checks["volume"] is False
    assert any("deficit 1" in f for f in rep.failures)


def test_validation_skips_volume_above_guard():
    g = cycle_graph(5)
    rep = validate_triangulation(tri(g), g, "cycle", samples=10)
    assert str(rep.checks["volume"]).startswith("skipped")
    assert rep.passed


def test_hstar_from_triangulation_examples():
    assert hstar_from_triangulation(tri(I1)) == (1, 3, 0)
    assert hstar_from_triangulation(tri(I2)) == (1, 6, 9, 0, 0)


@pytest.mark.parametrize("name", ["I1", "I2", "C3", "star3"])
def test_hstar_routes_agree(name):
    g = {"I1": I1, "I2": I2, "C3": C3, "star3": star_graph(3)}[name]
    o = specialized_order(g, "tree", 1) if name == "star3" else specialized_order(
        g, "cycle" if name == "C3" else "path")
    h = hstar_from_triangulation(enumerate_facets(g, o))
    assert h == hstar_ehrhart(g)
    assert sum(h) == len(enumerate_facets(g, o).facets)


@pytest.mark.parametrize("g", [I2, I3, C3, C4], ids=["I2", "I3", "C3", "C4"])
def test_count_independent_of_order(g):
    base = len(tri(g).facets)
    for seed in (1, 2):
        assert len(enumerate_facets(g, shuffled_good_order(g, seed)).facets) == base


@pytest.mark.parametrize("g", [I1, I2, C3], ids=["I1", "I2", "C3"])
def test_facets_distinct_and_maximal(g):
    t_ = tri(g)
    assert len(set(t_.facets)) == len(t_.facets)
    gens = all_generators(g)
    size = g.vertex_count + len(g.edges)
    assert all(len(f) == size for f in t_.facets)
    # each facet avoids every non-face, and no generator can be added without hitting one
    for f in t_.facets:
        assert not any(nf <= f for nf in t_.nonfaces)
        for extra in gens:
            if extra not in f:
                assert any(nf <= f | {extra} for nf in t_.nonfaces)


def test_facets_avoiding_brute_force_agrees():
    t_ = tri(I1)
    gens = all_generators(I1)
    brute = sorted((frozenset(c) for c in combinations(gens, 3)
                    if not any(nf <= set(c) for nf in t_.nonfaces)), key=sorted)
    assert facets_avoiding(I1, t_.nonfaces) == brute


@pytest.mark.parametrize("n", range(1, 6))
def test_path_interval_counts(n):
    g = path_graph(n)
    for f in tri(g).facets:
        ok, msg = path_interval_counts_ok(decorate(f, g), n)
        assert ok, msg


def test_interval_count_detects_bad_decoration():
    # circle at 1 only, every edge a single line: too few doubles
    d = decorate({z(1), ze(1, 2), ze(2, 3)}, I2)
    assert not path_interval_counts_ok(d, 2)[0]


def test_engine_guards():
    big = star_graph(8)
    with pytest.raises(GuardExceeded):
        enumerate_facets(big, specialized_order(big, "tree", 1))
    bad = TermOrder(tuple(all_generators(I1)), "z-first")
    with pytest.raises(NotGoodOrderError):
        enumerate_facets(I1, bad)


def test_non_tree_generic_graph():
    # a triangle with a pendant edge; no specialized order, but a shuffled good order works
    g = build_graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    a = enumerate_facets(g, shuffled_good_order(g, 0))
    b = enumerate_facets(g, shuffled_good_order(g, 5))
    assert len(a.facets) == len(b.facets)
    assert validate_triangulation(a, g, samples=20).passed
