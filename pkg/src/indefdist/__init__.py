"""Exact classification of two-distance point configurations in
pseudo-Euclidean spaces: algebraic-number arithmetic, exact spectral
computations, graph search, spherical theory, and coordinate constructions."""

__version__ = "0.1.0"

from .algebraic import AlgebraicNumber, alg_compare, alg_sign, isolate_roots, refine
from .embedding import (
    RelationDissimilarity,
    bound_ambient,
    bound_sphere,
    bound_sphere_q1,
    classify_type,
    embedding_dimension,
    f_matrix,
    k_integrality,
    scan_small_orders,
)
from .graphs import Graph, canonical_key, generate_all, graph6_decode, graph6_encode
from .search import classify, run_cell_search, verify_representable
from .spectral import Signature, char_poly, main_angles, main_polynomial, signature
from .spherical import (
    classify_spherical,
    is_spherical_in_embedding,
    minimal_spherical_dimension,
    spherical_radius,
)

__all__ = [
    "AlgebraicNumber",
    "Graph",
    "RelationDissimilarity",
    "Signature",
    "alg_compare",
    "alg_sign",
    "bound_ambient",
    "bound_sphere",
    "bound_sphere_q1",
    "canonical_key",
    "char_poly",
    "classify",
    "classify_spherical",
    "classify_type",
    "embedding_dimension",
    "f_matrix",
    "generate_all",
    "graph6_decode",
    "graph6_encode",
    "is_spherical_in_embedding",
    "isolate_roots",
    "k_integrality",
    "main_angles",
    "main_polynomial",
    "minimal_spherical_dimension",
    "refine",
    "run_cell_search",
    "scan_small_orders",
    "signature",
    "spherical_radius",
    "verify_representable",
]
