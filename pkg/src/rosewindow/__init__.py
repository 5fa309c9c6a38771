"""Rose Window graphs, canonical double covers, and stability analysis."""

from .graphs import (
    Graph,
    GraphError,
    VertexPartition,
    bipartition,
    connected_components,
    induced_subgraph,
    is_connected,
    quotient_graph,
    twin_pairs,
)
from .dimacs import DimacsError, read_dimacs, write_dimacs
from .perms import PermError, Permutation, PermGroup, compose, group_from_generators
from .autgroup import (
    CanonicalForm,
    Coloring,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    color_refinement,
    count_s_arcs,
    edge_orbit_count,
    is_s_arc_transitive,
)

__version__ = "1.0.0"

__all__ = [
    "Graph",
    "GraphError",
    "VertexPartition",
    "bipartition",
    "connected_components",
    "induced_subgraph",
    "is_connected",
    "quotient_graph",
    "twin_pairs",
    "DimacsError",
    "read_dimacs",
    "write_dimacs",
    "PermError",
    "Permutation",
    "PermGroup",
    "compose",
    "group_from_generators",
    "CanonicalForm",
    "Coloring",
    "are_isomorphic",
    "automorphism_group",
    "canonical_form",
    "color_refinement",
    "count_s_arcs",
    "edge_orbit_count",
    "is_s_arc_transitive",
    "__version__",
]
