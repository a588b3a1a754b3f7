"""Exact polynomial arithmetic, Groebner bases and graded-piece linear algebra."""

from .groebner import groebner, ideal_member, normal_form, reduce_basis
from .linalg import Span, nullspace, rank
from .parse import parse_poly
from .poly import Monomial, Poly, PolyRing, format_poly, poly_arith

__all__ = [
    "Monomial", "Poly", "PolyRing", "Span", "format_poly", "groebner", "ideal_member",
    "normal_form", "nullspace", "parse_poly", "poly_arith", "rank", "reduce_basis",
]
