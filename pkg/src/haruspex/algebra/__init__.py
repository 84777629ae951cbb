"""Exact polynomial and rational-function arithmetic over the integers."""

from .cyclotomic import CyclotomicFactorization, cyclotomic, cyclotomic_factor
from .intpoly import IntPoly, gcd_int_poly
from .partialfrac import PartialFractionForm, hadamard_apply, partial_fraction_t
from .ratfunc import PoleError, RatFunc
from .textform import parse_poly, parse_rat, poly_text, rat_text

__all__ = [
    "CyclotomicFactorization",
    "IntPoly",
    "PartialFractionForm",
    "PoleError",
    "RatFunc",
    "cyclotomic",
    "cyclotomic_factor",
    "gcd_int_poly",
    "hadamard_apply",
    "parse_poly",
    "parse_rat",
    "partial_fraction_t",
    "poly_text",
    "rat_text",
]
