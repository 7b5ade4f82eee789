"""Lattice-point model of the cosmological polytope C_G.

Coordinates are indexed by the vertices of G followed by its edges (in the
graph's edge order). Every generator point has coordinate sum 1, so C_G lives
in that affine hyperplane and is handled here as the cone it spans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Sequence

import numpy as np

from .graphs import Graph
from .linalg import det, dot, inverse, normal_vector, primitive, rank
from .toric import Generator, all_generators, exponent_image

HALFSPACE_MAX_DIM = 8
DILATE_MAX_DIM = 6
BRUTE_VOLUME_MAX_DIM = 7


class GuardExceeded(ValueError):
    """A computation was refused because its input is above the size guard."""

    def __init__(self, guard: str, message: str):
        super().__init__(f"{guard}: {message}")
        self.guard = guard


def generators(g: Graph) -> dict[Generator, tuple[int, ...]]:
    """Generator -> lattice point, in canonical generator order."""
    return {gen: exponent_image(gen, g) for gen in all_generators(g)}


def dimension(g: Graph) -> int:
    return g.vertex_count + len(g.edges) - 1


def _points(g: Graph) -> list[tuple[int, ...]]:
    return list(generators(g).values())


@dataclass(frozen=True)
class HalfspaceDescription:
    """C_G = {x : sum(x) = 1 and a.x >= 0 for every a in ``normals``}.

    On the hyperplane an inequality ``a.x >= b`` is equivalent to the
    homogeneous ``(a - b).x >= 0``, so every offset is folded into the normal.
    """

    ambient: int
    normals: tuple[tuple[int, ...], ...]

    @property
    def inequalities(self) -> list[tuple[tuple[int, ...], int]]:
        return [(a, 0) for a in self.normals]


def _dual_cone_rays(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of {a : a.p >= 0 for all p}, by double description.

    Assumes the points span the ambient space and lie in an open halfspace, so
    the cone is pointed and full dimensional.
    """
    dim = len(points[0])
    basis_idx: list[int] = []
    for k in range(len(points)):
        if rank([points[b] for b in basis_idx + [k]]) == len(basis_idx) + 1:
            basis_idx.append(k)
        if len(basis_idx) == dim:
            break
    if len(basis_idx) < dim:
        raise ValueError("points do not span the ambient space")
    # the initial cone {a : B a >= 0} is simplicial; its rays are the columns of B^-1
    inv = inverse([points[b] for b in basis_idx])
    rays = []
    for c in range(dim):
        col = [inv[r][c] for r in range(dim)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        rays.append(primitive([int(x * den) for x in col]))
    processed = list(basis_idx)
    for k in range(len(points)):
        if k in basis_idx:
            continue
        p = points[k]
        vals = [dot(r, p) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(k)
            continue
        zero_sets = [frozenset(q for q in processed if dot(r, points[q]) == 0) for r in rays]
        pos = [a for a, v in enumerate(vals) if v > 0]
        neg = [a for a, v in enumerate(vals) if v < 0]
        new_rays = [rays[a] for a, v in enumerate(vals) if v >= 0]
        for a in pos:
            for b in neg:
                common = zero_sets[a] & zero_sets[b]
                if len(common) < dim - 2:
                    continue
                # combinatorial adjacency: no third ray is tight on all of `common`
                if any(c != a and c != b and common <= zero_sets[c] for c in range(len(rays))):
                    continue
                va, vb = vals[a], vals[b]
                new_rays.append(primitive([va * x - vb * w for x, w in zip(rays[b], rays[a])]))
        rays = new_rays
        processed.append(k)
    return sorted(set(rays))


def halfspaces(g: Graph) -> HalfspaceDescription:
    d = dimension(g)
    if d > HALFSPACE_MAX_DIM:
        raise GuardExceeded("halfspace-dimension", f"dimension {d} > {HALFSPACE_MAX_DIM}")
    pts = _points(g)
    return HalfspaceDescription(len(pts[0]), tuple(_dual_cone_rays(pts)))


def contains(h: HalfspaceDescription, p: Sequence) -> bool:
    if len(p) != h.ambient:
        raise ValueError(f"point has {len(p)} coordinates, expected {h.ambient}")
    if sum(Fraction(x) for x in p) != 1:
        return False
    return all(dot(a, p) >= 0 for a in h.normals)


def count_dilate_points(g: Graph, k: int, h: HalfspaceDescription | None = None) -> int:
    """Lattice points of k*C_G, by scanning [-k,k]^(V+E) on the slice sum = k."""
    d = dimension(g)
    if d > DILATE_MAX_DIM:
        raise GuardExceeded("dilate-dimension", f"dimension {d} > {DILATE_MAX_DIM}")
    if k < 0 or k > d + 1:
        raise GuardExceeded("dilate-factor", f"k = {k} outside 0..{d + 1}")
    if k == 0:
        return 1
    h = h or halfspaces(g)
    A = np.array(h.normals, dtype=np.int64)
    D = h.ambient
    span = np.arange(-k, k + 1, dtype=np.int64)
    total = 0
    # fix the first coordinate per slab, grid the middle ones, solve for the last
    for first in span:
        rest = np.stack(np.meshgrid(*([span] * (D - 2)), indexing="ij"), axis=-1).reshape(-1, D - 2) \
            if D > 2 else np.zeros((1, 0), dtype=np.int64)
        last = k - first - rest.sum(axis=1)
        ok = (last >= -k) & (last <= k)
        rest, last = rest[ok], last[ok]
        pts = np.column_stack([np.full(len(rest), first), rest, last])
        total += int(np.all(pts @ A.T >= 0, axis=1).sum())
    return total


def ehrhart_polynomial(values: Sequence[int]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through (k, values[k])."""
    n = len(values)
    coeffs = [Fraction(0)] * n
    for k, yk in enumerate(values):
        # Lagrange basis polynomial for node k
        basis = [Fraction(1)]
        denom = 1
        for m in range(n):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for s in range(len(basis) - 1):
                basis[s] -= m * basis[s + 1]
            denom *= k - m
        for s in range(n):
            coeffs[s] += Fraction(yk, denom) * basis[s]
    return coeffs


def evaluate(coeffs: Sequence[Fraction], x) -> Fraction:
    return sum(c * x ** s for s, c in enumerate(coeffs))


def hstar_from_counts(counts: Sequence[int], d: int) -> tuple[int, ...]:
    """h* from Ehrhart values L(0..d) of a d-dimensional polytope."""
    if len(counts) < d + 1:
        raise ValueError("need L(0), ..., L(d)")
    out = []
    for j in range(d + 1):
        out.append(sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1)))
    return tuple(out)


def ehrhart_counts(g: Graph) -> list[int]:
    h = halfspaces(g)
    return [count_dilate_points(g, k, h) for k in range(dimension(g) + 1)]


def hstar_ehrhart(g: Graph) -> tuple[int, ...]:
    """h*_0..h*_d, from dilate counts at k = 0..d."""
    d = dimension(g)
    if d > DILATE_MAX_DIM:
        raise GuardExceeded("dilate-dimension", f"dimension {d} > {DILATE_MAX_DIM}")
    return hstar_from_counts(ehrhart_counts(g), d)


def placing_triangulation(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Placing triangulation of the cone over ``points``, inserting in list order.

    Each new point is coned over the boundary pieces it strictly sees; points
    already in the hull are skipped. Returns simplices as index tuples.
    """
    D = len(points[0])
    init: list[int] = []
    for k in range(len(points)):
        if rank([points[b] for b in init + [k]]) == len(init) + 1:
            init.append(k)
        if len(init) == D:
            break
    if len(init) < D:
        raise ValueError("points do not span the ambient space")
    interior = [sum(points[b][c] for b in init) for c in range(D)]

    def oriented(face):
        n = normal_vector([points[b] for b in face])
        return n if dot(n, interior) > 0 else tuple(-x for x in n)

    simplices = [tuple(init)]
    boundary = {}
    for drop in init:
        face = tuple(b for b in init if b != drop)
        boundary[frozenset(face)] = oriented(face)
    for k in range(len(points)):
        if k in init:
            continue
        q = points[k]
        visible = [f for f, n in boundary.items() if dot(n, q) < 0]
        if not visible:
            continue
        ridge_count: dict = {}
        for f in visible:
            simplices.append(tuple(sorted(f)) + (k,))
            for b in f:
                r = f - {b}
                ridge_count[r] = ridge_count.get(r, 0) + 1
            del boundary[f]
        for r, cnt in ridge_count.items():
            if cnt == 1:
                face = r | {k}
                boundary[face] = oriented(sorted(face))
    return simplices


def brute_volume(g: Graph) -> int:
    """Normalized volume as the summed |det| over a placing triangulation."""
    d = dimension(g)
    if d > BRUTE_VOLUME_MAX_DIM:
        raise GuardExceeded("brute-volume-dimension", f"dimension {d} > {BRUTE_VOLUME_MAX_DIM}")
    pts = _points(g)
    return sum(abs(det([pts[b] for b in s])) for s in placing_triangulation(pts))
