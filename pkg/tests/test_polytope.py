import itertools
import random
from fractions import Fraction

import pytest

from cosmotope.graphs import cycle_graph, path_graph, star_graph
from cosmotope.linalg import det, inverse, solve_left
from cosmotope.polytope import (GuardExceeded, brute_volume, contains, count_dilate_points,
                                dimension, ehrhart_counts, ehrhart_polynomial, evaluate,
                                generators, halfspaces, hstar_ehrhart)
from cosmotope.toric import T, Y, t, y, z, ze
from cosmotope.triangulation import enumerate_facets, point_matrix
from cosmotope.toric import specialized_order
from shared import SMALL_GRAPHS


def test_generator_table_i1():
    tab = generators(path_graph(1))
    assert tab[t(1, 2)] == (1, 1, -1)
    assert tab[y(1, 2)] == (1, -1, 1)
    assert tab[y(2, 1)] == (-1, 1, 1)
    assert tab[z(1)] == (1, 0, 0)
    assert tab[z(2)] == (0, 1, 0)
    assert tab[ze(1, 2)] == (0, 0, 1)


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_generator_table_size_and_hyperplane(name):
    g = SMALL_GRAPHS[name]
    tab = generators(g)
    assert len(tab) == g.vertex_count + 4 * len(g.edges)
    assert all(sum(p) == 1 for p in tab.values())


def test_dimension():
    assert dimension(path_graph(1)) == 2
    assert dimension(path_graph(2)) == 4
    assert dimension(cycle_graph(3)) == 5


def test_halfspaces_i1_is_triangle():
    assert len(halfspaces(path_graph(1)).normals) == 3


def test_contains_examples():
    h = halfspaces(path_graph(1))
    assert contains(h, [Fraction(1, 3)] * 3)
    assert contains(h, (0, 0, 1))
    assert not contains(h, (2, 0, -1))


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_halfspaces_generators_inside_witnesses_outside(name):
    g = SMALL_GRAPHS[name]
    h = halfspaces(g)
    tab = generators(g)
    assert all(contains(h, p) for p in tab.values())
    assert not contains(h, [0] * h.ambient)
    # reflecting any other generator through a vertex leaves the polytope
    for gen, p in tab.items():
        if gen.family not in (Y, T):
            continue
        for q in tab.values():
            if q != p:
                assert not contains(h, [2 * a - b for a, b in zip(p, q)])


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_random_convex_combinations_inside(name):
    g = SMALL_GRAPHS[name]
    h = halfspaces(g)
    pts = list(generators(g).values())
    rng = random.Random(7)
    for _ in range(100):
        w = [rng.randint(0, 50) for _ in pts]
        w[rng.randrange(len(w))] += 1
        tot = sum(w)
        p = [Fraction(sum(wk * q[c] for wk, q in zip(w, pts)), tot) for c in range(h.ambient)]
        assert contains(h, p)


def test_count_dilate_points_i1():
    g = path_graph(1)
    assert [count_dilate_points(g, k) for k in range(3)] == [1, 6, 15]


def test_count_dilate_guard():
    with pytest.raises(GuardExceeded):
        count_dilate_points(cycle_graph(4), 1)
    with pytest.raises(GuardExceeded):
        count_dilate_points(path_graph(1), 4)


def _count_by_facets(g, k):
    """Lattice points of k*C_G found as points of some dilated facet simplex."""
    tri = enumerate_facets(g, specialized_order(g, "cycle" if g.vertex_count == len(g.edges) else "path"))
    tab = generators(g)
    invs = [inverse(point_matrix(f, tab)) for f in tri.facets]
    D = len(next(iter(tab.values())))
    found = 0
    for head in itertools.product(range(-k, k + 1), repeat=D - 1):
        last = k - sum(head)
        if not -k <= last <= k:
            continue
        p = list(head) + [last]
        if any(all(x >= 0 for x in solve_left(p, inv)) for inv in invs):
            found += 1
    return found


@pytest.mark.parametrize("g", [path_graph(1), path_graph(2), cycle_graph(3)])
def test_dilate_counts_agree_with_triangulation_membership(g):
    for k in (1, 2):
        assert count_dilate_points(g, k) == _count_by_facets(g, k)


def test_ehrhart_interpolation_i1():
    coeffs = ehrhart_polynomial(ehrhart_counts(path_graph(1)))
    for k in range(6):
        assert evaluate(coeffs, k) == (k + 1) * (2 * k + 1)


@pytest.mark.parametrize("name", ["I1", "I2", "C3"])
def test_ehrhart_interpolation_reproduces_counts(name):
    g = SMALL_GRAPHS[name]
    counts = ehrhart_counts(g)
    coeffs = ehrhart_polynomial(counts)
    assert [evaluate(coeffs, k) for k in range(len(counts))] == counts
    d = dimension(g)
    assert evaluate(coeffs, d + 1) == count_dilate_points(g, d + 1)


def test_hstar_examples():
    assert hstar_ehrhart(path_graph(1)) == (1, 3, 0)
    assert hstar_ehrhart(path_graph(2)) == (1, 6, 9, 0, 0)
    assert sum(hstar_ehrhart(path_graph(2))) == 16


def test_brute_volume_examples():
    assert abs(det([(1, 1, -1), (1, -1, 1), (-1, 1, 1)])) == 4
    assert brute_volume(path_graph(1)) == 4
    assert brute_volume(path_graph(2)) == 16
    assert brute_volume(cycle_graph(3)) == 56


@pytest.mark.parametrize("g", [path_graph(1), path_graph(2), cycle_graph(3), star_graph(3)])
def test_brute_volume_equals_hstar_sum(g):
    assert brute_volume(g) == sum(hstar_ehrhart(g))


def test_brute_volume_guard():
    with pytest.raises(GuardExceeded):
        brute_volume(path_graph(5))
