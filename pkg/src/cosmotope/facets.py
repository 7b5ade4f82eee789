"""Graphical description of triangulation facets.

A generator set S is drawn as a decorated copy of G: a circle at v when z_v is
in S, and on each edge a line (z_e), a wave (t_e) and/or arrows (y). Facets of
the triangulations for paths and cycles are generated directly from their
combinatorial description; for trees they are recognised by components,
threshold paths, blocking and branchings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .graphs import (Graph, GraphError, NotATreeError, RootedTree, covers, cycle_graph, edge_key,
                     path_graph)
from .toric import (Y, Z, Generator, all_generators, fundamental_binomials, interreduce,
                    leading_monomial, t, tree_order, y, z, ze, zigzag_binomial)

MAX_TREE_FACET_EDGES = 12


@dataclass(frozen=True)
class DecoratedGraph:
    host: Graph
    circles: frozenset
    edge_symbols: dict = field(hash=False)

    def symbols(self, a: int, b: int) -> frozenset:
        return self.edge_symbols.get(edge_key(a, b), frozenset())

    def has_line(self, a: int, b: int) -> bool:
        return ze(a, b) in self.symbols(a, b)

    def has_wave(self, a: int, b: int) -> bool:
        return t(a, b) in self.symbols(a, b)

    def has_arrow(self, tail: int, head: int) -> bool:
        return y(tail, head) in self.symbols(tail, head)

    def is_single(self, e) -> bool:
        return len(self.symbols(*e)) == 1

    def is_double(self, e) -> bool:
        s = self.symbols(*e)
        return len(s) == 2 and ze(*e) in s and not t(*e) in s

    def support_is_host(self) -> bool:
        return all(self.symbols(*e) for e in self.host.edges)

    def edges_single_or_double(self) -> bool:
        return all(self.is_single(e) or self.is_double(e) for e in self.host.edges)

    def generators(self) -> frozenset:
        out = {z(v) for v in self.circles}
        for syms in self.edge_symbols.values():
            out |= syms
        return frozenset(out)

    def render(self) -> str:
        """Text form: node marks (o/*) in vertex order, then per edge its tokens.

        Tokens appear in the fixed order ``- ~ > <``; for an edge a-b with a < b,
        ``>`` is the arrow a->b and ``<`` the arrow b->a.
        """
        nodes = "".join("o" if v in self.circles else "*" for v in self.host.vertices)
        parts = [nodes]
        for a, b in self.host.edges:
            tok = ""
            if self.has_line(a, b):
                tok += "-"
            if self.has_wave(a, b):
                tok += "~"
            if self.has_arrow(a, b):
                tok += ">"
            if self.has_arrow(b, a):
                tok += "<"
            parts.append(f"{a}-{b}:{tok}")
        return " ".join(parts)


def decorate(S: Iterable[Generator], g: Graph) -> DecoratedGraph:
    circles = set()
    symbols: dict = {}
    for gen in S:
        if gen.family == Z:
            if not 1 <= gen.i <= g.vertex_count:
                raise KeyError(f"{gen} is not a generator of {g}")
            circles.add(gen.i)
            continue
        e = gen.edge
        if not g.has_edge(*e):
            raise KeyError(f"{gen} is not a generator of {g}")
        symbols.setdefault(e, set()).add(gen)
    return DecoratedGraph(g, frozenset(circles), {e: frozenset(s) for e, s in symbols.items()})


def extract(d: DecoratedGraph) -> frozenset:
    return d.generators()


def render_set(S, g: Graph) -> str:
    return decorate(S, g).render()


# Per-edge states used by the direct generators; orientation is relative to a
# walk direction u -> v along the edge.
LINE, WAVE, FWD, BWD, LINE_FWD, LINE_BWD = "line", "wave", "fwd", "bwd", "line+fwd", "line+bwd"


def edge_generators(u: int, v: int, state: str) -> list[Generator]:
    return {
        LINE: [ze(u, v)],
        WAVE: [t(u, v)],
        FWD: [y(u, v)],
        BWD: [y(v, u)],
        LINE_FWD: [ze(u, v), y(u, v)],
        LINE_BWD: [ze(u, v), y(v, u)],
    }[state]


def interval_patterns(length: int) -> list[tuple[str, ...]]:
    """Decorations of the edges strictly between two consecutive circle nodes.

    Either the first edge is a single line or wave and every later edge is a
    double pointing back; or the first edge is a double pointing forward, one
    later edge at position t is a single wave or backward arrow, the doubles
    before it point freely and the doubles after it point back. 2^length total.
    """
    out = []
    rest_back = lambda m: (LINE_BWD,) * m
    for first in (LINE, WAVE):
        out.append((first,) + rest_back(length - 1))
    for pos in range(1, length):
        for single in (WAVE, BWD):
            for middle in itertools.product((LINE_FWD, LINE_BWD), repeat=pos - 1):
                out.append((LINE_FWD,) + middle + (single,) + rest_back(length - pos - 1))
    return out


class FacetCodec:
    """Facets as bitmasks over a graph's generators in canonical order."""

    def __init__(self, g: Graph):
        self.gens = all_generators(g)
        self.index = {gen: k for k, gen in enumerate(self.gens)}

    def mask(self, gens: Iterable[Generator]) -> int:
        out = 0
        for gen in gens:
            out |= 1 << self.index[gen]
        return out

    def decode(self, mask: int) -> frozenset:
        return frozenset(gen for k, gen in enumerate(self.gens) if mask >> k & 1)

    def decode_all(self, masks: Iterable[int]) -> list[frozenset]:
        # increasing bit tuples sort like the sorted generator lists
        ordered = sorted(masks, key=lambda m: [k for k in range(len(self.gens)) if m >> k & 1])
        return [self.decode(m) for m in ordered]


def _or_all(parts) -> int:
    out = 0
    for p in parts:
        out |= p
    return out


def path_facet_masks(n: int) -> list[int]:
    """Path facets as bitmasks over the generators of I_n (see FacetCodec)."""
    if n < 1:
        raise ValueError("path facets need n >= 1")
    codec = FacetCodec(path_graph(n))
    edge_mask = {(v, st): codec.mask(edge_generators(v, v + 1, st))
                 for v in range(1, n + 1) for st in (LINE, WAVE, FWD, BWD, LINE_FWD, LINE_BWD)}

    def run(start, pattern):
        return _or_all(edge_mask[start + off, st] for off, st in enumerate(pattern))

    out = []
    for r in range(1, n + 2):
        for zs in itertools.combinations(range(1, n + 2), r):
            base = codec.mask(z(v) for v in zs) | run(1, (LINE_BWD,) * (zs[0] - 1))
            choices = [[run(a, p) for p in interval_patterns(b - a)] for a, b in zip(zs, zs[1:])]
            tail_len = n + 1 - zs[-1]
            if tail_len:
                choices.append([run(zs[-1], (LINE_FWD,) + rest) for rest in
                                itertools.product((LINE_FWD, LINE_BWD), repeat=tail_len - 1)])
            out.extend(base | _or_all(combo) for combo in itertools.product(*choices))
    return out


def path_facets(n: int) -> list[frozenset]:
    """Facets of the path-order triangulation of C_{I_n}, generated directly."""
    return FacetCodec(path_graph(n)).decode_all(path_facet_masks(n))


def cycle_facet_masks(n: int) -> list[int]:
    """Cycle facets as bitmasks over the generators of C_n.

    Each arc between cyclically consecutive circle nodes carries an interval
    pattern, read in increasing cyclic direction.
    """
    if n < 3:
        raise ValueError("cycle facets need n >= 3")
    codec = FacetCodec(cycle_graph(n))
    succ = lambda v: v % n + 1
    edge_mask = {(v, st): codec.mask(edge_generators(v, succ(v), st))
                 for v in range(1, n + 1) for st in (LINE, WAVE, FWD, BWD, LINE_FWD, LINE_BWD)}
    patterns = {L: interval_patterns(L) for L in range(1, n + 1)}
    arc_cache: dict = {}

    def arc_masks(a, length):
        key = (a, length)
        if key not in arc_cache:
            masks = []
            for p in patterns[length]:
                m, u = 0, a
                for st in p:
                    m |= edge_mask[u, st]
                    u = succ(u)
                masks.append(m)
            arc_cache[key] = masks
        return arc_cache[key]

    out = []
    for r in range(1, n + 1):
        for zs in itertools.combinations(range(1, n + 1), r):
            base = codec.mask(z(v) for v in zs)
            choices = [arc_masks(a, (zs[(k + 1) % r] - a) % n or n) for k, a in enumerate(zs)]
            out.extend(base | _or_all(combo) for combo in itertools.product(*choices))
    return out


def cycle_facets(n: int) -> list[frozenset]:
    """Facets of the cycle-order triangulation of C_{C_n}, generated directly."""
    return FacetCodec(cycle_graph(n)).decode_all(cycle_facet_masks(n))


def closed_volume(kind: str, n: int) -> int:
    if kind == "path":
        if n < 1:
            raise ValueError("path volume needs n >= 1")
        return 4 ** n
    if kind == "cycle":
        if n < 3:
            raise ValueError("cycle volume needs n >= 3")
        return 4 ** n - 2 ** n
    raise ValueError(f"no closed form for {kind!r}")


# -- trees -------------------------------------------------------------------


@dataclass(frozen=True)
class ZComponent:
    vertices: frozenset
    edges: tuple
    root: int
    circles: frozenset
    bounded: bool

    @property
    def m(self) -> int:
        return len(self.circles)


def _components_for(rt: RootedTree, zset: frozenset) -> list[ZComponent]:
    tree = rt.tree
    seen: set = set()
    groups = []
    for v in rt.vertex_order:
        if v in zset or v in seen:
            continue
        block, stack = {v}, [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in tree.neighbors(u):
                if w not in zset and w not in seen:
                    seen.add(w)
                    block.add(w)
                    stack.append(w)
        edges = tuple(e for e in tree.edges if e[0] in block or e[1] in block)
        groups.append(edges)
    groups += [(e,) for e in tree.edges if e[0] in zset and e[1] in zset]
    out = []
    for edges in groups:
        verts = frozenset(v for e in edges for v in e)
        deg = {v: 0 for v in verts}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        root = min(verts, key=rt.rank.__getitem__)
        leaves = [v for v in verts if deg[v] == 1]
        out.append(ZComponent(verts, edges, root, verts & zset,
                              all(v in zset for v in leaves)))
    out.sort(key=lambda c: rt.rank[c.root])
    return out


def z_components(d: DecoratedGraph, rt: RootedTree) -> list[ZComponent]:
    """Split the tree at circle nodes; a circle node joins every component it touches."""
    if not d.host.is_tree():
        raise NotATreeError("components are defined on trees")
    return _components_for(rt, d.circles)


class ThresholdError(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdPath:
    start: int
    partner: int | None
    alpha: int
    vertices: tuple
    single_edge: tuple | None
    kind: int  # 1 or 2; 0 when the walk to the local root has no single edge


def threshold_path(d: DecoratedGraph, c: ZComponent, i: int, rt: RootedTree) -> ThresholdPath:
    if i not in c.circles or i == c.root:
        raise ThresholdError(f"{i} is not a non-root circle node of the component")
    walk = [i]
    while walk[-1] != c.root:
        walk.append(rt.parent[walk[-1]])
    single = None
    for u, v in zip(walk, walk[1:]):
        if d.is_single((u, v)):
            single = edge_key(u, v)
            break
    if single is None:
        return ThresholdPath(i, None, c.root, tuple(walk), None, 0)
    # pieces of the component once every other single edge is removed
    kept = [e for e in c.edges if e == single or not d.is_single(e)]
    adj: dict = {}
    for a, b in kept:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    piece, stack = {i}, [i]
    while stack:
        u = stack.pop()
        for w in adj.get(u, ()):
            if w not in piece:
                piece.add(w)
                stack.append(w)
    others = sorted((piece & c.circles) - {i})
    if len(others) != 1:
        raise ThresholdError(f"single edge {single} separates {len(others) + 1} circle nodes")
    partner = others[0]
    full = rt.tree_path(i, partner)
    alpha = min(full, key=rt.rank.__getitem__)
    verts = tuple(full[: full.index(alpha) + 1])
    return ThresholdPath(i, partner, alpha, verts, single, 1 if rt.less(i, partner) else 2)


def _steps(vertices):
    return list(zip(vertices, vertices[1:]))


def is_blocking(p: ThresholdPath, d: DecoratedGraph) -> bool:
    """Whether the decorations along a threshold path rule out simple zig-zag obstructions.

    Directions are read along the path from the circle node toward alpha:
    an arrow u->v on step (u, v) points away from the circle node.
    """
    steps = _steps(p.vertices)
    for u, v in steps:
        if edge_key(u, v) == p.single_edge:
            break
        if not (d.is_double((u, v)) and d.has_arrow(u, v)):
            return False
    else:
        # no single edge on the path: fine only when the walk reached the local root
        return p.single_edge is None
    pos = next(k for k, (u, v) in enumerate(steps) if edge_key(u, v) == p.single_edge)
    u, v = steps[pos]
    wave, line = d.has_wave(u, v), d.has_line(u, v)
    away = d.has_arrow(u, v)
    if p.kind == 1:
        return away or wave
    if wave:
        return True
    if line:
        return not any(d.has_arrow(b, a) for a, b in steps)
    if away:
        return any(d.has_arrow(b, a) for a, b in steps[pos + 1:])
    return False


def has_partially_directed_branching(d: DecoratedGraph, i: int, rt: RootedTree) -> bool:
    """Some j covering i sees lines from i down to alpha and arrows from j into alpha."""
    for j in rt.tree.vertices:
        if not covers(rt, i, j):
            continue
        path = rt.tree_path(i, j)
        alpha = min(path, key=rt.rank.__getitem__)
        k = path.index(alpha)
        left, right = path[: k + 1], path[k:]
        if not all(d.has_line(a, b) for a, b in _steps(left)):
            continue
        # arrows on j's side point toward alpha, i.e. backwards along this path
        if all(d.has_arrow(b, a) for a, b in _steps(right)):
            return True
    return False


def _root_edge_ok(d: DecoratedGraph, c: ZComponent) -> bool:
    r = c.root
    for a, b in c.edges:
        if r not in (a, b):
            continue
        other = b if a == r else a
        syms = d.symbols(a, b)
        ok = syms in ({ze(a, b)}, {t(a, b)}, {ze(a, b), y(r, other)})
        if not ok:
            return False
    return True


def _component_ok(d: DecoratedGraph, c: ZComponent, rt: RootedTree) -> bool:
    singles = sum(1 for e in c.edges if d.is_single(e))
    if singles != c.m - 1:
        return False
    if c.root in c.circles and not _root_edge_ok(d, c):
        return False
    for i in c.circles:
        if i == c.root:
            continue
        try:
            p = threshold_path(d, c, i, rt)
        except ThresholdError:
            return False
        if not is_blocking(p, d):
            return False
    return True


def tree_facet_check(S: Iterable[Generator], rt: RootedTree) -> bool:
    """Facet test for the tree-order triangulation from the decorated graph alone."""
    tree = rt.tree
    d = decorate(S, tree)
    if not d.support_is_host() or not d.edges_single_or_double():
        return False
    for c in z_components(d, rt):
        if not _component_ok(d, c, rt):
            return False
    return not any(has_partially_directed_branching(d, i, rt) for i in d.circles)


_SINGLE_STATES = (LINE, WAVE, FWD, BWD)
_DOUBLE_STATES = (LINE_FWD, LINE_BWD)


def _component_decorations(c: ZComponent, zset: frozenset, rt: RootedTree, host: Graph):
    """Edge-symbol maps for one component that pass its local conditions."""
    edges = list(c.edges)
    found = []
    for single_set in itertools.combinations(range(len(edges)), c.m - 1):
        options = []
        for k, (a, b) in enumerate(edges):
            states = _SINGLE_STATES if k in single_set else _DOUBLE_STATES
            opts = []
            for st in states:
                gens = edge_generators(a, b, st)
                # an arrow into a circle node is a fundamental obstruction
                if any(gn.family == Y and gn.j in zset for gn in gens):
                    continue
                opts.append(frozenset(gens))
            options.append(opts)
        for combo in itertools.product(*options):
            symbols = dict(zip(edges, combo))
            d = DecoratedGraph(host, zset, symbols)
            if _component_ok(d, c, rt):
                found.append(symbols)
    return found


def tree_facets(rt: RootedTree) -> list[frozenset]:
    """Facets of the tree-order triangulation, by component-wise backtracking."""
    tree = rt.tree
    if len(tree.edges) > MAX_TREE_FACET_EDGES:
        raise GraphError(f"tree facet guard: {len(tree.edges)} edges > {MAX_TREE_FACET_EDGES}")
    out = []
    verts = list(tree.vertices)
    for r in range(1, len(verts) + 1):
        for zs in itertools.combinations(verts, r):
            zset = frozenset(zs)
            comps = _components_for(rt, zset)
            per = []
            for c in comps:
                decs = _component_decorations(c, zset, rt, tree)
                if not decs:
                    break
                per.append(decs)
            else:
                for combo in itertools.product(*per):
                    symbols = {}
                    for part in combo:
                        symbols.update(part)
                    d = DecoratedGraph(tree, zset, symbols)
                    if any(has_partially_directed_branching(d, i, rt) for i in zset):
                        continue
                    out.append(d.generators())
    return sorted(out, key=sorted)


def simple_zigzag_binomials(rt: RootedTree):
    """Simple zig-zag binomials of both types for the rooted tree."""
    out = []
    tree = rt.tree
    for top in tree.vertices:
        # type 1: a downward chain top = i_1 -> ... -> i_k with k >= 3
        stack = [[top]]
        while stack:
            chain = stack.pop()
            for c in rt.children(chain[-1]):
                ext = chain + [c]
                if len(ext) >= 3:
                    out.append(zigzag_binomial(ext, [0]))
                stack.append(ext)
    for i in tree.vertices:
        for j in tree.vertices:
            if covers(rt, i, j):
                # walk from j to i; the steps on j's side of alpha carry the arrows
                path = rt.tree_path(j, i)
                alpha = min(path, key=rt.rank.__getitem__)
                out.append(zigzag_binomial(path, range(path.index(alpha))))
    return out


def simple_obstructions(rt: RootedTree) -> list[frozenset]:
    """Leading supports of fundamental and simple zig-zag binomials, interreduced."""
    o = tree_order(rt)
    sets = [leading_monomial(b, o).support() for b in fundamental_binomials(rt.tree)]
    sets += [leading_monomial(b, o).support() for b in simple_zigzag_binomials(rt)]
    return interreduce(sets)
