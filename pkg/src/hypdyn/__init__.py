"""Exact homology, Lefschetz counting and structure checks for hyperbolic dynamics on 3-manifolds."""

from __future__ import annotations

from .covers import CombinatorialManifold, lift_map, orientation_character, oriented_double_cover
from .duality import DualPairing, cohomology_transport, dual_map, reciprocal_eigen_check
from .exact_sequence import ExactSequenceSpec, les_rank_solver
from .homology import ChainComplexPair, HomologyGroup, cohomology_rank, homology
from .lefschetz import (
    HyperbolicFixedPointData,
    InducedMapFamily,
    fixed_point_index,
    lefschetz_number,
    periodic_count_formula,
    solenoid_count,
    toral_induced_family,
    toral_periodic_points_bruteforce,
    verify_lefschetz_hopf,
)
from .matrix import IntMatrix, Matrix, char_poly, exterior_power, smith_normal_form
from .poly import Poly
from .spaces import build_standard_space
from .spectral import is_roots_of_unity_only, spectral_radius_exceeds_one
from .structure import (
    BasicSetSpec,
    StructureModel,
    eigenvalue_budget,
    pair_ledger,
    permutation_H0_eigen,
    smale_order,
    theorem_check,
)

__all__ = [
    "BasicSetSpec", "ChainComplexPair", "CombinatorialManifold", "DualPairing", "ExactSequenceSpec",
    "HomologyGroup", "HyperbolicFixedPointData", "InducedMapFamily", "IntMatrix", "Matrix", "Poly",
    "StructureModel", "build_standard_space", "char_poly", "cohomology_rank", "cohomology_transport",
    "dual_map", "eigenvalue_budget", "exterior_power", "fixed_point_index", "homology",
    "is_roots_of_unity_only", "lefschetz_number", "les_rank_solver", "lift_map", "orientation_character",
    "oriented_double_cover", "pair_ledger", "periodic_count_formula", "permutation_H0_eigen",
    "reciprocal_eigen_check", "smale_order", "smith_normal_form", "solenoid_count", "spectral_radius_exceeds_one",
    "theorem_check", "toral_induced_family", "toral_periodic_points_bruteforce", "verify_lefschetz_hopf",
]
