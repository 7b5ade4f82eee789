"""Monomials and binomials of the toric ring of a cosmological polytope.

The ring has one variable per lattice point used: ``z_v`` per vertex, ``z_e``
and ``t_e`` per edge, and ``y_ije``/``y_jie`` per edge and orientation. This
module builds the fundamental, zig-zag and cyclic binomials, the good lex term
orders used for paths, cycles and trees, a deterministic division algorithm,
and a Buchberger-criterion check.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graphs import (Graph, RootedTree, edge_key, enumerate_simple_cycles,
                     enumerate_simple_paths, root_order)

Z, ZE, Y, T = 0, 1, 2, 3
_PREFIX = {Z: "z", ZE: "z", Y: "y", T: "t"}

MAX_BASIS_EDGES = 12


class NotGoodOrderError(ValueError):
    pass


class OrderShapeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    """A ring variable. Field order doubles as the canonical generator order."""

    family: int
    i: int
    j: int = 0

    @property
    def edge(self) -> tuple[int, int] | None:
        return None if self.family == Z else edge_key(self.i, self.j)

    def __str__(self):
        if self.family == Z:
            return f"z{self.i}"
        return f"{_PREFIX[self.family]}[{self.i},{self.j}]"

    __repr__ = __str__


def z(v: int) -> Generator:
    return Generator(Z, v)


def ze(a: int, b: int) -> Generator:
    return Generator(ZE, *edge_key(a, b))


def y(tail: int, head: int) -> Generator:
    return Generator(Y, tail, head)


def t(a: int, b: int) -> Generator:
    return Generator(T, *edge_key(a, b))


def parse_generator(text: str) -> Generator:
    text = text.strip()
    head = text[0]
    if "[" in text:
        a, b = (int(s) for s in text[text.index("[") + 1: text.index("]")].split(","))
        if head == "z":
            return ze(a, b)
        if head == "y":
            return y(a, b)
        if head == "t":
            return t(a, b)
    elif head == "z":
        return z(int(text[1:]))
    raise ValueError(f"cannot parse generator {text!r}")


def all_generators(g: Graph) -> list[Generator]:
    """The |V| + 4|E| generators in canonical order."""
    gens = [z(v) for v in g.vertices]
    gens += [ze(a, b) for a, b in g.edges]
    gens += [y(a, b) for a, b in g.edges] + [y(b, a) for a, b in g.edges]
    gens += [t(a, b) for a, b in g.edges]
    return sorted(gens)


def exponent_image(gen: Generator, g: Graph) -> tuple[int, ...]:
    """Lattice point of a generator, coordinates indexed by vertices then edges."""
    n = g.vertex_count
    vec = [0] * (n + len(g.edges))
    if gen.family == Z:
        vec[gen.i - 1] = 1
        return tuple(vec)
    e = edge_key(gen.i, gen.j)
    try:
        col = n + g.edges.index(e)
    except ValueError:
        raise KeyError(f"{gen} does not belong to {g}") from None
    if gen.family == ZE:
        vec[col] = 1
    elif gen.family == Y:
        vec[gen.i - 1], vec[gen.j - 1], vec[col] = 1, -1, 1
    else:
        vec[e[0] - 1], vec[e[1] - 1], vec[col] = 1, 1, -1
    return tuple(vec)


@dataclass(frozen=True)
class Monomial:
    items: tuple[tuple[Generator, int], ...] = ()

    @classmethod
    def of(cls, *gens: Generator) -> "Monomial":
        return cls.from_counts(Counter(gens))

    @classmethod
    def from_counts(cls, counts) -> "Monomial":
        return cls(tuple(sorted((g, e) for g, e in counts.items() if e)))

    def counts(self) -> dict:
        return dict(self.items)

    def degree(self) -> int:
        return sum(e for _, e in self.items)

    def support(self) -> frozenset:
        return frozenset(g for g, _ in self.items)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.items)

    def divides(self, other: "Monomial") -> bool:
        oc = other.counts()
        return all(oc.get(g, 0) >= e for g, e in self.items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        c = Counter(self.counts())
        c.update(other.counts())
        return Monomial.from_counts(c)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        c = Counter(self.counts())
        for g, e in other.items:
            c[g] -= e
            if c[g] < 0:
                raise ValueError(f"{other} does not divide {self}")
        return Monomial.from_counts(c)

    def lcm(self, other: "Monomial") -> "Monomial":
        c = self.counts()
        for g, e in other.items:
            c[g] = max(c.get(g, 0), e)
        return Monomial.from_counts(c)

    def image(self, g: Graph) -> tuple[int, ...]:
        total = [0] * (g.vertex_count + len(g.edges))
        for gen, e in self.items:
            for k, x in enumerate(exponent_image(gen, g)):
                total[k] += e * x
        return tuple(total)

    def __str__(self):
        if not self.items:
            return "1"
        return "*".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.items)


FUNDAMENTAL, ZIGZAG, CYCLIC, CYCLE = "fundamental", "zigzag", "cyclic", "cycle"


@dataclass(frozen=True)
class Binomial:
    plus: Monomial
    minus: Monomial
    kind: str

    def __str__(self):
        return f"{self.plus} - {self.minus}"

    def is_homogeneous(self) -> bool:
        return self.plus.degree() == self.minus.degree()

    def in_kernel(self, g: Graph) -> bool:
        return self.plus.image(g) == self.minus.image(g)

    def is_irreducible(self) -> bool:
        return not (self.plus.support() & self.minus.support())


def fundamental_binomials(g: Graph) -> list[Binomial]:
    out = []
    for i, j in g.edges:
        yij, yji, te, zee = y(i, j), y(j, i), t(i, j), ze(i, j)
        pairs = [
            ((yij, yji), (zee, zee)),
            ((yij, te), (z(i), z(i))),
            ((yji, te), (z(j), z(j))),
            ((yij, z(j)), (z(i), zee)),
            ((yji, z(i)), (z(j), zee)),
            ((te, zee), (z(i), z(j))),
        ]
        out += [Binomial(Monomial.of(*p), Monomial.of(*m), FUNDAMENTAL) for p, m in pairs]
    return out


def _check_guard(g: Graph):
    if len(g.edges) > MAX_BASIS_EDGES:
        raise ValueError(f"basis generation guard: |E| = {len(g.edges)} > {MAX_BASIS_EDGES}")


def zigzag_binomial(path: Sequence[int], first_block: Iterable[int]) -> Binomial:
    """Zig-zag binomial of a path and the edge positions in its forward block."""
    fwd = set(first_block)
    k = len(path) - 1
    plus = [z(path[-1])]
    minus = [z(path[0])]
    for pos in range(k):
        a, b = path[pos], path[pos + 1]
        if pos in fwd:
            plus.append(y(a, b))
            minus.append(ze(a, b))
        else:
            minus.append(y(b, a))
            plus.append(ze(a, b))
    return Binomial(Monomial.of(*plus), Monomial.of(*minus), ZIGZAG)


def zigzag_binomials(g: Graph) -> list[Binomial]:
    _check_guard(g)
    out, seen = [], set()
    for path in enumerate_simple_paths(g):
        k = len(path) - 1
        for r in range(1, k):
            for block in itertools.combinations(range(k), r):
                b = zigzag_binomial(path, block)
                key = frozenset((b.plus, b.minus))
                if key not in seen:
                    seen.add(key)
                    out.append(b)
    return out


def cyclic_binomial(cycle: Sequence[int], first_block: Iterable[int]) -> Binomial:
    fwd = set(first_block)
    k = len(cycle)
    plus, minus = [], []
    for pos in range(k):
        a, b = cycle[pos], cycle[(pos + 1) % k]
        if pos in fwd:
            plus.append(y(a, b))
            minus.append(ze(a, b))
        else:
            minus.append(y(b, a))
            plus.append(ze(a, b))
    if len(fwd) in (0, k):
        ys, zs = (plus, minus) if fwd else (minus, plus)
        return Binomial(Monomial.of(*ys), Monomial.of(*zs), CYCLE)
    return Binomial(Monomial.of(*plus), Monomial.of(*minus), CYCLIC)


def cyclic_binomials(g: Graph) -> list[Binomial]:
    _check_guard(g)
    out, seen = [], set()
    for cycle in enumerate_simple_cycles(g):
        k = len(cycle)
        for r in range(0, k + 1):
            for block in itertools.combinations(range(k), r):
                b = cyclic_binomial(cycle, block)
                key = frozenset((b.plus, b.minus))
                if key not in seen:
                    seen.add(key)
                    out.append(b)
    return out


def generate_basis(g: Graph) -> list[Binomial]:
    """The basis B_G: fundamental, then zig-zag, then cyclic binomials."""
    return fundamental_binomials(g) + zigzag_binomials(g) + cyclic_binomials(g)


@dataclass(frozen=True)
class TermOrder:
    """Lexicographic order from a variable sequence, largest variable first."""

    sequence: tuple[Generator, ...]
    name: str = "lex"
    _rank: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        rank = {gen: k for k, gen in enumerate(self.sequence)}
        if len(rank) != len(self.sequence):
            raise ValueError("variable sequence has repeats")
        object.__setattr__(self, "_rank", rank)

    def key(self, m: Monomial) -> tuple[int, ...]:
        vec = [0] * len(self.sequence)
        for gen, e in m.items:
            vec[self._rank[gen]] = e
        return tuple(vec)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def descriptor(self) -> str:
        return f"{self.name}: " + " > ".join(map(str, self.sequence))


def generic_good_order(seq: Sequence[Generator], g: Graph | None = None,
                       name: str = "lex") -> TermOrder:
    """Lex order from ``seq``; every y- and t-variable must precede every z-variable."""
    seq = tuple(seq)
    if g is not None and sorted(seq) != all_generators(g):
        raise ValueError("sequence is not a permutation of the graph's generators")
    seen_z = False
    for gen in seq:
        if gen.family in (Z, ZE):
            seen_z = True
        elif seen_z:
            raise NotGoodOrderError(f"{gen} comes after a z-variable")
    return TermOrder(seq, name)


def _lex_from_edges(forward: Sequence[tuple[int, int]], vertex_seq: Sequence[int],
                    name: str) -> TermOrder:
    seq = [y(a, b) for a, b in forward]
    seq += [y(b, a) for a, b in reversed(forward)]
    seq += [ze(a, b) for a, b in forward]
    seq += [t(a, b) for a, b in forward]
    seq += [z(v) for v in vertex_seq]
    return TermOrder(tuple(seq), name)


def path_order(g: Graph) -> TermOrder:
    n = len(g.edges)
    if g.vertex_count != n + 1 or set(g.edges) != {(i, i + 1) for i in range(1, n + 1)}:
        raise OrderShapeError("path order needs the labeled path 1-2-...-(n+1)")
    return _lex_from_edges([(i, i + 1) for i in range(1, n + 1)], range(1, n + 2), "path")


def cycle_order(g: Graph) -> TermOrder:
    n = g.vertex_count
    expected = {edge_key(i, i % n + 1) for i in range(1, n + 1)}
    if n < 3 or len(g.edges) != n or set(g.edges) != expected:
        raise OrderShapeError("cycle order needs the labeled cycle 1-2-...-n-1")
    return _lex_from_edges([(i, i % n + 1) for i in range(1, n + 1)], range(1, n + 1), "cycle")


def tree_order(rt: RootedTree) -> TermOrder:
    return _lex_from_edges(rt.edge_order, rt.vertex_order, f"tree:{rt.root}")


def specialized_order(g: Graph, kind: str, root: int | None = None) -> TermOrder:
    if kind == "path":
        return path_order(g)
    if kind == "cycle":
        return cycle_order(g)
    if kind == "tree":
        if root is None:
            raise OrderShapeError("tree order needs a root leaf")
        return tree_order(root_order(g, root))
    raise OrderShapeError(f"unknown order kind {kind!r}")


def leading_monomial(b: Binomial, o: TermOrder) -> Monomial:
    kp, km = o.key(b.plus), o.key(b.minus)
    if kp == km:
        raise ArithmeticError(f"tie between the two terms of {b}")
    return b.plus if kp > km else b.minus


def trailing_monomial(b: Binomial, o: TermOrder) -> Monomial:
    return b.minus if leading_monomial(b, o) == b.plus else b.plus


def is_good_order(o: TermOrder, g: Graph) -> bool:
    if sorted(o.sequence) != all_generators(g):
        return False
    for b in fundamental_binomials(g):
        if leading_monomial(b, o) != b.plus:
            return False
    for b in cyclic_binomials(g):
        if b.kind == CYCLE and leading_monomial(b, o) != b.plus:
            return False
    return True


def _add(poly: dict, m: Monomial, c) -> None:
    v = poly.get(m, 0) + c
    if v:
        poly[m] = v
    else:
        poly.pop(m, None)


def reduce(poly, basis: Sequence[Binomial], o: TermOrder) -> list[tuple[Fraction, Monomial]]:
    """Normal form of a polynomial modulo ``basis``.

    ``poly`` is an iterable of ``(coefficient, Monomial)`` terms. The largest
    reducible term is always rewritten first, using the first basis element
    (in list order) whose leading monomial divides it. Returns the remainder
    as terms sorted from largest to smallest.
    """
    rules = [(leading_monomial(b, o), trailing_monomial(b, o)) for b in basis]
    work: dict = {}
    for c, m in poly:
        _add(work, m, Fraction(c))
    done: dict = {}
    while work:
        m = max(work, key=o.key)
        c = work.pop(m)
        for lead, trail in rules:
            if lead.divides(m):
                _add(work, (m / lead) * trail, c)
                break
        else:
            done[m] = c
    return sorted(((c, m) for m, c in done.items()), key=lambda cm: o.key(cm[1]), reverse=True)


@dataclass
class GroebnerReport:
    passed: bool
    pairs_checked: int
    failing_pairs: list = field(default_factory=list)


def s_polynomial(a: Binomial, b: Binomial, o: TermOrder) -> list[tuple[int, Monomial]]:
    la, lb = leading_monomial(a, o), leading_monomial(b, o)
    ta, tb = trailing_monomial(a, o), trailing_monomial(b, o)
    m = la.lcm(lb)
    # (m/la)(la - ta) - (m/lb)(lb - tb)
    return [(-1, (m / la) * ta), (1, (m / lb) * tb)]


def verify_groebner(basis: Sequence[Binomial], o: TermOrder, g: Graph) -> GroebnerReport:
    """Buchberger criterion: every S-polynomial must reduce to zero.

    Raises NotGoodOrderError for orders that are not good for ``g``; that is a
    refusal, distinct from a failing report.
    """
    if not is_good_order(o, g):
        raise NotGoodOrderError(f"{o.name} is not a good term order for {g}")
    basis = list(basis)
    report = GroebnerReport(True, 0)
    for a, b in itertools.combinations(range(len(basis)), 2):
        report.pairs_checked += 1
        rem = reduce(s_polynomial(basis[a], basis[b], o), basis, o)
        if rem:
            report.passed = False
            report.failing_pairs.append((a, b, rem))
    return report


class NonSquarefreeError(ValueError):
    pass


def interreduce(sets: Iterable[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    kept: list[frozenset] = []
    for s in uniq:
        if not any(k <= s for k in kept):
            kept.append(s)
    return sorted(kept, key=lambda s: (len(s), sorted(s)))


def minimal_nonfaces(basis: Sequence[Binomial], o: TermOrder) -> list[frozenset]:
    """Supports of the leading monomials, with non-minimal supports dropped."""
    supports = []
    for b in basis:
        lead = leading_monomial(b, o)
        if not lead.is_squarefree():
            raise NonSquarefreeError(f"leading term {lead} of {b} is not squarefree")
        supports.append(lead.support())
    return interreduce(supports)


def format_poly(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for c, m in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(m) if mag == 1 else f"{mag}*{m}"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def shuffled_good_order(g: Graph, seed: int) -> TermOrder:
    """A seeded random lex order with every y- and t-variable above every z-variable."""
    rng = random.Random(seed)
    gens = all_generators(g)
    high = [x for x in gens if x.family in (Y, T)]
    low = [x for x in gens if x.family in (Z, ZE)]
    rng.shuffle(high)
    rng.shuffle(low)
    return generic_good_order(high + low, g, name=f"shuffled:{seed}")
