"""Burling graphs, their stable-set families, and a tree/path-decomposition pair of 2-width at most 2."""

__version__ = "0.1.0"

from .coloring import (
    BudgetExceeded,
    Colorable,
    NotColorable,
    chromatic_number,
    has_q_coloring,
    witness_stable_set,
)
from .construction import (
    BurlingStructure,
    Provenance,
    StableFamily,
    build_burling,
    predicted_counts,
    verify_family,
)
from .decomp import (
    PathDecomposition,
    TreeDecomposition,
    bipartite_path_decompositions,
    grid_path_decompositions,
    is_spaghetti,
    k_width,
    k_width_at_most,
    k_width_naive,
    validate_path_decomposition,
    validate_tree_decomposition,
    width,
)
from .graph import (
    Graph,
    InputError,
    greedy_coloring,
    is_proper_coloring,
    is_stable_set,
    is_triangle_free,
)
from .ortho import OrthogonalPair, build_orthogonal, verify_theorem2

__all__ = [
    "BudgetExceeded",
    "BurlingStructure",
    "Colorable",
    "Graph",
    "InputError",
    "NotColorable",
    "OrthogonalPair",
    "PathDecomposition",
    "Provenance",
    "StableFamily",
    "TreeDecomposition",
    "bipartite_path_decompositions",
    "build_burling",
    "build_orthogonal",
    "chromatic_number",
    "greedy_coloring",
    "grid_path_decompositions",
    "has_q_coloring",
    "is_proper_coloring",
    "is_spaghetti",
    "is_stable_set",
    "is_triangle_free",
    "k_width",
    "k_width_at_most",
    "k_width_naive",
    "predicted_counts",
    "validate_path_decomposition",
    "validate_tree_decomposition",
    "verify_family",
    "verify_theorem2",
    "width",
    "witness_stable_set",
]
