"""Facets of the regular unimodular triangulation induced by a good term order.

A generator set is a facet when it has |V|+|E| elements and contains no
minimal non-face. Facets are found by depth-first search over generators in
canonical order with bitmask bookkeeping.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .graphs import Graph
from .linalg import det, inverse, solve_left
from .polytope import GuardExceeded, brute_volume, dimension, generators
from .toric import (Generator, NotGoodOrderError, TermOrder, all_generators,
                    generate_basis, is_good_order, minimal_nonfaces)

MAX_ENGINE_GENERATORS = 32


@dataclass
class Triangulation:
    graph: Graph
    facets: list[frozenset]
    order_descriptor: str
    nonfaces: list[frozenset] = field(default_factory=list)

    def __len__(self):
        return len(self.facets)


def facet_sort_key(f) -> list:
    return sorted(f)


def _search(n: int, size: int, nonface_masks: Sequence[int]) -> list[int]:
    """All ``size``-subsets of range(n) (as bitmasks) containing no nonface mask."""
    touching: list[list[int]] = [[] for _ in range(n)]
    for m in nonface_masks:
        for k in range(n):
            if m >> k & 1:
                touching[k].append(m)
    found: list[int] = []

    # `blocked` holds generators whose addition would complete a non-face
    def dfs(k: int, chosen: int, count: int, blocked: int):
        if count == size:
            found.append(chosen)
            return
        if k == n:
            return
        free_ahead = bin(~blocked & ((1 << n) - (1 << k))).count("1")
        if free_ahead < size - count:
            return
        bit = 1 << k
        if not blocked & bit:
            new_chosen = chosen | bit
            new_blocked = blocked
            for m in touching[k]:
                rest = m & ~new_chosen
                if rest & (rest - 1) == 0:
                    new_blocked |= rest
            dfs(k + 1, new_chosen, count + 1, new_blocked)
        dfs(k + 1, chosen, count, blocked)

    blocked0 = 0
    for m in nonface_masks:
        if m & (m - 1) == 0:
            blocked0 |= m
    dfs(0, 0, 0, blocked0)
    return found


def facets_avoiding(g: Graph, nonfaces: Sequence[frozenset]) -> list[frozenset]:
    """All (|V|+|E|)-subsets of generators avoiding every set in ``nonfaces``."""
    gens = all_generators(g)
    if len(gens) > MAX_ENGINE_GENERATORS:
        raise GuardExceeded("engine-generators",
                            f"{len(gens)} generators > {MAX_ENGINE_GENERATORS}")
    index = {gen: k for k, gen in enumerate(gens)}
    masks = [sum(1 << index[x] for x in nf) for nf in nonfaces]
    size = g.vertex_count + len(g.edges)
    out = []
    for mask in _search(len(gens), size, masks):
        out.append(frozenset(gens[k] for k in range(len(gens)) if mask >> k & 1))
    out.sort(key=facet_sort_key)
    return out


def enumerate_facets(g: Graph, o: TermOrder, nonfaces: Sequence[frozenset] | None = None) -> Triangulation:
    if not is_good_order(o, g):
        raise NotGoodOrderError(f"{o.name} is not a good term order for {g}")
    n_gens = g.vertex_count + 4 * len(g.edges)
    if n_gens > MAX_ENGINE_GENERATORS:
        raise GuardExceeded("engine-generators", f"{n_gens} generators > {MAX_ENGINE_GENERATORS}")
    if nonfaces is None:
        nonfaces = minimal_nonfaces(generate_basis(g), o)
    return Triangulation(g, facets_avoiding(g, nonfaces), o.descriptor(), list(nonfaces))


def point_matrix(f, table: dict) -> list[tuple[int, ...]]:
    return [table[gen] for gen in sorted(f)]


def is_unimodular_simplex(f, table: dict) -> bool:
    ambient = len(next(iter(table.values())))
    if len(f) != ambient:
        raise ValueError(f"facet has {len(f)} generators, expected {ambient}")
    return abs(det(point_matrix(f, table))) == 1


def normalized_volume(t: Triangulation) -> int:
    return len(t.facets)


def hstar_from_triangulation(t: Triangulation) -> tuple[int, ...]:
    """h-vector of the triangulation, from the f-vector of its face complex.

    The complex is a ball, so the top h-entry vanishes and is dropped, leaving
    h_0..h_d for a d-dimensional polytope.
    """
    size = t.graph.vertex_count + len(t.graph.edges)
    gens = all_generators(t.graph)
    index = {gen: k for k, gen in enumerate(gens)}
    faces: set[int] = set()
    for f in t.facets:
        mask = sum(1 << index[x] for x in f)
        # all submasks of the facet
        sub = mask
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & mask
    f_vec = [0] * (size + 1)  # f_vec[i] = number of faces with i elements
    for m in faces:
        f_vec[bin(m).count("1")] += 1
    # h(x) = sum_i f_{i} x^i (1-x)^(size-i)
    h = [0] * (size + 1)
    for i, fi in enumerate(f_vec):
        for s in range(size - i + 1):
            h[i + s] += fi * comb(size - i, s) * (-1) ** s
    if h[-1] != 0:
        raise ArithmeticError("top h-entry of a triangulated ball should vanish")
    return tuple(h[:-1])


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, name: str, ok: bool, detail: str = ""):
        self.checks[name] = ok
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)


def random_interior_points(g: Graph, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Convex combinations of all generator points with positive random weights."""
    rng = random.Random(seed)
    pts = list(generators(g).values())
    out = []
    for _ in range(count):
        w = [rng.randint(1, 1000) for _ in pts]
        total = sum(w)
        out.append(tuple(Fraction(sum(wk * p[c] for wk, p in zip(w, pts)), total)
                         for c in range(len(pts[0]))))
    return out


def path_interval_counts_ok(d, n: int) -> tuple[bool, str]:
    """Double-edge counts on the segments of a path facet cut at its circle nodes."""
    zs = sorted(d.circles)
    k = n + 1 - len(zs)
    doubles = [e for e in d.host.edges if d.is_double(e)]
    if len(doubles) != k:
        return False, f"{len(doubles)} double edges, expected {k}"
    if not zs:
        return False, "no circle nodes"

    def count(lo, hi):
        return sum(1 for a, b in doubles if lo <= a and b <= hi)

    if count(1, zs[0]) != zs[0] - 1:
        return False, "segment before the first circle"
    for a, b in zip(zs, zs[1:]):
        if count(a, b) != b - a - 1:
            return False, f"interval {a}..{b}"
    if count(zs[-1], n + 1) != n + 1 - zs[-1]:
        return False, "segment after the last circle"
    return True, ""


def validate_triangulation(t: Triangulation, g: Graph, shape: str | None = None,
                           samples: int = 100, seed: int = 0) -> ValidationReport:
    """Structural and oracle checks on a triangulation.

    ``shape`` may be "path" or "cycle" to enable the shape-specific checks.
    """
    from .facets import decorate

    rep = ValidationReport()
    table = generators(g)
    bad = [f for f in t.facets if not is_unimodular_simplex(f, table)]
    rep.record("unimodular", not bad, f"{len(bad)} facets with |det| != 1")
    try:
        vol = brute_volume(g)
        rep.record("volume", vol == len(t.facets),
                   f"facet count {len(t.facets)} vs brute volume {vol} (deficit {vol - len(t.facets)})")
    except GuardExceeded as exc:
        rep.checks["volume"] = f"skipped ({exc.guard})"
    decorated = [decorate(f, g) for f in t.facets]
    rep.record("support", all(d.support_is_host() for d in decorated),
               "some facet's support graph differs from the host")
    rep.record("double-form", all(d.edges_single_or_double() for d in decorated),
               "some facet has an edge that is neither single nor line+arrow")
    if shape == "path":
        n = len(g.edges)
        msgs = [m for ok, m in (path_interval_counts_ok(d, n) for d in decorated) if not ok]
        rep.record("path-intervals", not msgs, "; ".join(msgs[:3]))
    if shape == "cycle":
        rep.record("cycle-circles", all(d.circles for d in decorated), "facet without circle nodes")
    # covering spot check: each sample lies in some facet simplex
    inverses = [inverse(point_matrix(f, table)) for f in t.facets]
    misses = 0
    for p in random_interior_points(g, samples, seed):
        if not any(all(x >= 0 for x in solve_left(p, inv)) for inv in inverses):
            misses += 1
    rep.record("covering", misses == 0, f"{misses} sample points in no facet")
    return rep
