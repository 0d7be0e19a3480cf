"""Exact arithmetic kernel: Q(i) scalars, polynomials, row reduction, parsing."""

from .scalar import GaussScalar, as_scalar, format_scalar, ZERO, ONE, I
from .multipoly import MultiPoly, mono_basis, mono_index
from .unipoly import (
    UniPoly,
    coprime_base,
    multiplicity,
    poly_gcd,
    poly_gcd_many,
    squarefree_decomp,
    squarefree_part,
)
from .matrix import ExactMatrix, RREF, rref, rank, nullspace, mat_vec_rows
from .parser import parse_poly, parse_unipoly
from .roots import compose, complex_roots, DEFAULT_ROOT_TOL

__all__ = [
    "GaussScalar", "as_scalar", "format_scalar", "ZERO", "ONE", "I",
    "MultiPoly", "mono_basis", "mono_index",
    "UniPoly", "coprime_base", "multiplicity", "poly_gcd", "poly_gcd_many",
    "squarefree_decomp", "squarefree_part",
    "ExactMatrix", "RREF", "rref", "rank", "nullspace", "mat_vec_rows",
    "parse_poly", "parse_unipoly",
    "compose", "complex_roots", "DEFAULT_ROOT_TOL",
]
