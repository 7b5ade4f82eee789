"""Exact computations on cosmological polytopes of graphs.

Gröbner bases of their toric ideals, the induced regular unimodular
triangulations, graphical facet descriptions for paths, cycles and trees,
volumes, h*-vectors and canonical-form evaluation.
"""

__version__ = "0.1.0"

from .graphs import Graph, RootedTree, build_graph, cycle_graph, path_graph, root_order, star_graph
from .toric import generate_basis, specialized_order, verify_groebner
from .triangulation import enumerate_facets

__all__ = [
    "Graph", "RootedTree", "build_graph", "cycle_graph", "path_graph", "root_order", "star_graph",
    "generate_basis", "specialized_order", "verify_groebner", "enumerate_facets",
]
