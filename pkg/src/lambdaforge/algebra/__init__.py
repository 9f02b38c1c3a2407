"""Exact arithmetic foundation: rationals, polynomials, series, rings."""

from .multipoly import MultiPoly, parse_poly, poly_eval_in_ring, poly_mul, var_sort_key
from .rationals import ONE, ZERO, is_rational, rat, rat_from_str, rat_str
from .rings import CommutativeRing, IntegerRing, PolynomialRing, RationalField
from .series import TruncSeries, series_invert, series_mul

__all__ = [
    "MultiPoly",
    "parse_poly",
    "poly_eval_in_ring",
    "poly_mul",
    "var_sort_key",
    "ONE",
    "ZERO",
    "is_rational",
    "rat",
    "rat_from_str",
    "rat_str",
    "CommutativeRing",
    "IntegerRing",
    "PolynomialRing",
    "RationalField",
    "TruncSeries",
    "series_invert",
    "series_mul",
]
