"""Exact field arithmetic and discrete valuations."""
from .elements import AlgElem, NumberField, RatFunc, family_of, is_irreducible, is_zero, one_like, zero_like
from .literals import field_from_spec, format_element, parse_element, parse_poly
from .poly import MultiPoly, UniPoly, poly_gcd, poly_xgcd
from .valuation import (
    INF,
    OrderAtInfinity,
    OrderAtIrreducible,
    OrderAtZero,
    PAdic,
    int_valuation,
    is_integral,
    normalize,
    uniformizer,
    valuate,
    valuation_from_dict,
)

__all__ = [
    "AlgElem", "NumberField", "RatFunc", "MultiPoly", "UniPoly",
    "PAdic", "OrderAtZero", "OrderAtInfinity", "OrderAtIrreducible", "INF",
    "valuate", "uniformizer", "is_integral", "normalize", "int_valuation",
    "parse_element", "parse_poly", "format_element", "field_from_spec", "valuation_from_dict",
    "family_of", "zero_like", "one_like", "is_zero", "is_irreducible", "poly_gcd", "poly_xgcd",
]
