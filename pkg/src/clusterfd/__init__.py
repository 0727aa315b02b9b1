"""Exact cluster-algebra computations with principal coefficients.

Seeds, mutations, c/d/f/g-vectors, finite-type classification and the
rank-2 Dyck-path formulas for greedy elements and F-polynomials.
"""

from .exchange import (
    ExchangeMatrix,
    FiniteTypeClass,
    bipartite_sign,
    cartan_companion,
    cartan_matrix,
    check_skew_symmetrizable,
    classify_cartan,
    dynkin_exchange_matrix,
    finite_type_classification,
    mutate_matrix,
    mutate_word,
    source_sink_words,
)
from .polynomial import LaurentPoly, NonExactDivisionError, TropicalMonomial, parse_poly
from .rank2 import (
    MaximalDyckPath,
    SizeGuardError,
    chebyshev_S,
    enumerate_compatible_pairs,
    g_from_d_rank2,
    greedy_element,
    greedy_element_principal,
    is_compatible,
    maximal_dyck_path,
    rank2_D_closed_form,
    restore_F,
)
from .seed import EnumerationCapExceeded, Seed, enumerate_seeds, initial_seed, mutate_seed, seeds_along
from .vectors import (
    Report,
    VectorMatrix,
    c_matrix,
    d_matrix_recursive,
    f_matrix_recursive,
    g_matrix,
    verify_duality,
    verify_fd,
    verify_fd_all_seeds,
    verify_uniqueness,
    walk,
)

__all__ = [
    "EnumerationCapExceeded",
    "ExchangeMatrix",
    "FiniteTypeClass",
    "LaurentPoly",
    "MaximalDyckPath",
    "NonExactDivisionError",
    "Report",
    "Seed",
    "SizeGuardError",
    "TropicalMonomial",
    "VectorMatrix",
    "bipartite_sign",
    "c_matrix",
    "cartan_companion",
    "cartan_matrix",
    "chebyshev_S",
    "check_skew_symmetrizable",
    "classify_cartan",
    "d_matrix_recursive",
    "dynkin_exchange_matrix",
    "enumerate_compatible_pairs",
    "enumerate_seeds",
    "f_matrix_recursive",
    "finite_type_classification",
    "g_from_d_rank2",
    "g_matrix",
    "greedy_element",
    "greedy_element_principal",
    "initial_seed",
    "is_compatible",
    "maximal_dyck_path",
    "mutate_matrix",
    "mutate_seed",
    "mutate_word",
    "parse_poly",
    "rank2_D_closed_form",
    "restore_F",
    "seeds_along",
    "source_sink_words",
    "verify_duality",
    "verify_fd",
    "verify_fd_all_seeds",
    "verify_uniqueness",
    "walk",
]

__version__ = "0.1.0"
