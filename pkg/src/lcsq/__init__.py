"""Exact lower central series computations for one-relator quotients of free algebras."""

from .ncpoly import AlgebraPresentation, CommPoly, NCPoly, ParseError, ResourceError, format_poly, parse
from .lcs import (
    DimTable,
    algebra_dim,
    b_dim_free,
    b_dim_quotient,
    certify_basis_n2,
    certify_basis_n3,
    check_b2_identity,
    dim_table,
    filtered_pieces,
    gr_algebra_dim,
    gr_b_dim,
    ideal_piece,
    lcs_piece,
    random_relation,
)
from .kahler import closed_form_series, kernel_of_d_dim, omega_quotient_dim, squarefree_check
from .hseries import HilbertSeries, eq_prefix, expand, series_arith

__version__ = "0.1.0"

__all__ = [
    "AlgebraPresentation",
    "CommPoly",
    "NCPoly",
    "ParseError",
    "ResourceError",
    "format_poly",
    "parse",
    "DimTable",
    "algebra_dim",
    "b_dim_free",
    "b_dim_quotient",
    "certify_basis_n2",
    "certify_basis_n3",
    "check_b2_identity",
    "dim_table",
    "filtered_pieces",
    "gr_algebra_dim",
    "gr_b_dim",
    "ideal_piece",
    "lcs_piece",
    "random_relation",
    "closed_form_series",
    "kernel_of_d_dim",
    "omega_quotient_dim",
    "squarefree_check",
    "HilbertSeries",
    "eq_prefix",
    "expand",
    "series_arith",
]
