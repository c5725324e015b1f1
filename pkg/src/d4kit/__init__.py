"""Exact toolkit for Diophantine D(4)-tuples of polynomials over Z[i][X]."""
from .gint import GaussianInt, gi_div_exact, gi_norm, gi_sqrt, parse_gint
from .gpoly import GPoly, X, as_poly, poly_div_exact, poly_print, poly_sqrt, sort_key
from .polytext import ParseError, poly_parse
from .dtuple import (
    DTuple,
    extend_pair_regular,
    extend_triple_regular,
    is_regular_quadruple,
    lift_dminus4,
    pair_family,
    verify_dtuple,
)
from .pell import analyze, build_system, descend, intersect, run_checkers, run_sequence
from .search import SearchBounds, audit_lemmas, audit_theorem, enumerate_pairs

__version__ = "0.1.0"

__all__ = [
    "GaussianInt", "gi_div_exact", "gi_norm", "gi_sqrt", "parse_gint",
    "GPoly", "X", "as_poly", "poly_div_exact", "poly_print", "poly_sqrt", "sort_key",
    "ParseError", "poly_parse",
    "DTuple", "extend_pair_regular", "extend_triple_regular", "is_regular_quadruple",
    "lift_dminus4", "pair_family", "verify_dtuple",
    "analyze", "build_system", "descend", "intersect", "run_checkers", "run_sequence",
    "SearchBounds", "audit_lemmas", "audit_theorem", "enumerate_pairs",
]
