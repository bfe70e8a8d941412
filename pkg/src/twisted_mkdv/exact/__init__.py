"""Exact arithmetic: rationals, dual numbers, polynomials, rational functions."""

from fractions import Fraction as Rat

from .dual import DualRat
from .dualfn import DualFn
from .linalg import nullspace, rank, solve
from .poly import Poly, gcd, wronskian
from .ratfn import ONE, ZERO, RatFn, log_deriv

__all__ = [
    "Rat",
    "DualRat",
    "DualFn",
    "Poly",
    "RatFn",
    "ONE",
    "ZERO",
    "gcd",
    "wronskian",
    "log_deriv",
    "solve",
    "nullspace",
    "rank",
]
