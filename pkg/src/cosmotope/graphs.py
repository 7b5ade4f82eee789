"""Connected simple graphs, rooted trees and path/cycle enumeration."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    """Base class for graph validation failures."""


class DisconnectedGraphError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class NotATreeError(GraphError):
    pass


class RootNotLeafError(GraphError):
    pass


Edge = tuple[int, int]


def edge_key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """A connected simple undirected graph on vertices ``1..vertex_count``.

    Edges are stored as sorted pairs, in the order they were given. That order
    fixes the coordinate layout of the ambient lattice (vertices first, then
    edges) and the default ordering of edge-indexed variables.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    _adj: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        adj = {v: [] for v in range(1, self.vertex_count + 1)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in adj.items()})

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj.get(a, ())

    def is_tree(self) -> bool:
        return len(self.edges) == self.vertex_count - 1

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if self.degree(v) == 1]

    def to_json(self) -> str:
        return json.dumps({"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]})

    def __str__(self):
        return f"Graph(n={self.vertex_count}, edges={list(self.edges)})"


def build_graph(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if vertex_count < 1:
        raise VertexRangeError("vertex_count must be positive")
    seen = set()
    normalized = []
    for a, b in edges:
        a, b = int(a), int(b)
        for v in (a, b):
            if not 1 <= v <= vertex_count:
                raise VertexRangeError(f"endpoint {v} outside 1..{vertex_count}")
        if a == b:
            raise SelfLoopError(f"self-loop at vertex {a}")
        e = edge_key(a, b)
        if e in seen:
            raise DuplicateEdgeError(f"edge {e} appears twice")
        seen.add(e)
        normalized.append(e)
    g = Graph(vertex_count, tuple(normalized))
    reached = {1}
    queue = deque([1])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in reached:
                reached.add(w)
                queue.append(w)
    if len(reached) != vertex_count:
        missing = sorted(set(g.vertices) - reached)
        raise DisconnectedGraphError(f"vertices {missing} unreachable from 1")
    return g


def parse_graph_json(text: str) -> Graph:
    data = json.loads(text)
    try:
        n = data["vertices"]
        edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError("graph document needs 'vertices' and 'edges'") from exc
    if not isinstance(n, int) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise GraphError("malformed graph document")
    return build_graph(n, [tuple(e) for e in edges])


def path_graph(n: int) -> Graph:
    """The path I_n with n edges on vertices 1..n+1."""
    return build_graph(n + 1, [(i, i + 1) for i in range(1, n + 1)])


def cycle_graph(n: int) -> Graph:
    """The cycle C_n; the closing edge n-1 is listed last."""
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return build_graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def star_graph(n: int) -> Graph:
    """Star with n edges: center 2, root leaf 1, remaining leaves 3..n+1."""
    return build_graph(n + 1, [(1, 2)] + [(2, k) for k in range(3, n + 2)])


def enumerate_simple_paths(g: Graph) -> list[tuple[int, ...]]:
    """All simple paths with at least two edges, one per reversal class.

    A path is reported in the direction whose first endpoint is smaller.
    """
    out = []

    def extend(path, on_path):
        last = path[-1]
        for w in g.neighbors(last):
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and path[0] < path[-1]:
                out.append(tuple(path))
            extend(path, on_path)
            on_path.discard(w)
            path.pop()

    for v in g.vertices:
        extend([v], {v})
    out.sort()
    return out


def enumerate_simple_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All simple cycles, canonicalized: smallest vertex first, then its smaller neighbor."""
    out = []
    for start in g.vertices:
        # only cycles whose minimum vertex is `start`
        def extend(path, on_path):
            last = path[-1]
            for w in g.neighbors(last):
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > start and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(path, on_path)
                    on_path.discard(w)
                    path.pop()

        extend([start], {start})
    out.sort()
    return out


def signed_degree(directed_edges: Iterable[tuple[int, int]], v: int) -> int:
    """Out-degree minus in-degree of ``v``."""
    deg = 0
    for tail, head in directed_edges:
        if tail == v:
            deg += 1
        if head == v:
            deg -= 1
    return deg


@dataclass(frozen=True)
class RootedTree:
    tree: Graph
    root: int
    parent: dict
    depth: dict
    vertex_order: tuple[int, ...]
    rank: dict = field(compare=False, repr=False)

    def less(self, i: int, j: int) -> bool:
        """``i <_r j``"""
        return self.rank[i] < self.rank[j]

    def children(self, v: int) -> list[int]:
        return sorted((w for w in self.tree.neighbors(v) if self.parent.get(w) == v),
                      key=self.rank.__getitem__)

    @property
    def edge_order(self) -> tuple[tuple[int, int], ...]:
        """Directed edges (parent, child), smallest first under the edge order."""
        arcs = [(self.parent[c], c) for c in self.tree.vertices if c != self.root]
        return tuple(sorted(arcs, key=lambda a: (self.rank[a[0]], self.rank[a[1]])))

    def path_to_root(self, v: int) -> list[int]:
        out = [v]
        while out[-1] != self.root:
            out.append(self.parent[out[-1]])
        return out

    def tree_path(self, a: int, b: int) -> list[int]:
        """Vertex sequence of the unique path from a to b."""
        up_a = self.path_to_root(a)
        up_b = self.path_to_root(b)
        on_b = {v: k for k, v in enumerate(up_b)}
        for k, v in enumerate(up_a):
            if v in on_b:
                return up_a[: k + 1] + list(reversed(up_b[: on_b[v]]))
        raise AssertionError("tree paths always meet at the root")


def root_order(t: Graph, root: int) -> RootedTree:
    """Root a tree at a leaf and build the floret-wise vertex order.

    Nodes are ordered level by level; within a level the children of an
    earlier parent come first, and siblings are ordered by vertex index.
    """
    if not t.is_tree():
        raise NotATreeError(f"{t} is not a tree")
    if t.vertex_count > 1 and t.degree(root) != 1:
        raise RootNotLeafError(f"root {root} is not a leaf")
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    level = [root]
    while level:
        nxt = []
        for p in level:
            kids = sorted(w for w in t.neighbors(p) if w not in parent)
            for c in kids:
                parent[c] = p
                depth[c] = depth[p] + 1
            nxt.extend(kids)
        order.extend(nxt)
        level = nxt
    rank = {v: k for k, v in enumerate(order)}
    return RootedTree(t, root, parent, depth, tuple(order), rank)


def covers(rt: RootedTree, i: int, j: int) -> bool:
    """Whether j covers i: i <_r j and every proper ancestor of j is <_r i."""
    if i == j or not rt.less(i, j):
        return False
    v = rt.parent[j]
    while v is not None:
        if rt.less(i, v):
            return False
        v = rt.parent[v]
    return True
