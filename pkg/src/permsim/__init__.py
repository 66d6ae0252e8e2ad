"""Exact tools for deciding when permutation representations of S_n unite conjugacy classes."""

__version__ = "0.1.0"

from .characters import RepKind, RepresentationSpec, rep_char, subset_gen_fn
from .field_linalg import FieldMatrix, FieldSpec, invariant_factors, perm_matrix, similar
from .invariant_recovery import oracle_from_matrix, recover_cycle_type
from .perm_core import (CycleType, Permutation, cycle_type, format_cycle_type,
                        parse_cycle_type, parse_permutation, power_cycle_type)
from .uniting_analysis import find_united_pairs, united_by_char, united_by_induced_type

__all__ = [
    "CycleType", "FieldMatrix", "FieldSpec", "Permutation", "RepKind", "RepresentationSpec",
    "cycle_type", "find_united_pairs", "format_cycle_type", "invariant_factors",
    "oracle_from_matrix", "parse_cycle_type", "parse_permutation", "perm_matrix",
    "power_cycle_type", "recover_cycle_type", "rep_char", "similar", "subset_gen_fn",
    "united_by_char", "united_by_induced_type",
]
