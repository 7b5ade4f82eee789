"""Exact integer/rational linear algebra for small dense matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for s in range(k + 1, n):
                if m[s][k] != 0:
                    m[k], m[s] = m[s], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals. Raises ZeroDivisionError if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [r[n:] for r in m]


def solve_left(p: Sequence, inv: Sequence[Sequence]) -> list:
    """Row vector ``p @ inv``."""
    n = len(inv)
    return [sum(p[k] * inv[k][j] for k in range(n) if p[k]) for j in range(n)]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def normal_vector(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Primitive integer normal of the span of ``d-1`` independent rows in Z^d.

    Computed from signed maximal minors (generalized cross product), so the
    result is exact and deterministic up to the returned sign.
    """
    d = len(rows[0])
    if len(rows) != d - 1:
        raise ValueError("need exactly d-1 rows")
    out = []
    for k in range(d):
        minor = [[r[j] for j in range(d) if j != k] for r in rows]
        out.append((-1) ** k * det(minor))
    if not any(out):
        raise ValueError("rows are linearly dependent")
    return primitive(out)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))
