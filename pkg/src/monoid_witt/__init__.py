"""Exact arithmetic in the I-adic truncations ZR/I^n of the monoid algebra of a
perfect F_p-algebra R, with a classical Witt-vector oracle for comparison."""

from .errors import HomomorphismError, NotDivisibleError, NotInvertibleError, ParseError
from .literals import parse_coefficient, parse_element, parse_ring
from .monoid_algebra import MonoidAlgebraElement, bracket
from .perfect import (
    FiniteField, PerfectClosure, PerfectElement, RingHom, find_embedding, finite_field,
    perfect_closure)
from .truncated import (
    TruncatedElement, divide_by_p, frobenius, frobenius_inv, from_digits, induced_map,
    invert, reduce, teichmuller, teichmuller_expand, valuation, verschiebung)
from .witt import WittRing, WittVector, alpha2, alpha_n, alpha_n_inverse, witt_structure_polys

__all__ = [
    "FiniteField", "HomomorphismError", "MonoidAlgebraElement", "NotDivisibleError",
    "NotInvertibleError", "ParseError", "PerfectClosure", "PerfectElement", "RingHom",
    "TruncatedElement", "WittRing", "WittVector", "alpha2", "alpha_n", "alpha_n_inverse",
    "bracket", "divide_by_p", "find_embedding", "finite_field", "frobenius", "frobenius_inv",
    "from_digits", "induced_map", "invert", "parse_coefficient", "parse_element",
    "parse_ring", "perfect_closure", "reduce", "teichmuller", "teichmuller_expand",
    "valuation", "verschiebung", "witt_structure_polys",
]
