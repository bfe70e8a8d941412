"""Dual numbers over the rationals: a + b*eps with eps**2 == 0."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import FieldError


class DualRat:
    """Exact dual number ``value + eps * infinitesimal``.

    Mixed arithmetic with ``int`` and ``Fraction`` is supported, so a
    polynomial may hold a mixture of plain rationals and dual numbers.
    Division is defined only when the divisor has a nonzero value part.
    """

    __slots__ = ("value", "eps")

    def __init__(self, value=0, eps=0):
        self.value = Fraction(value)
        self.eps = Fraction(eps)

    @staticmethod
    def _coerce(other):
        if isinstance(other, DualRat):
            return other
        if isinstance(other, (int, Rational)):
            return DualRat(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DualRat(self.value + o.value, self.eps + o.eps)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DualRat(self.value - o.value, self.eps - o.eps)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return DualRat(-self.value, -self.eps)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DualRat(self.value * o.value, self.value * o.eps + self.eps * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise FieldError("division by a dual number with zero value part")
        q = self.value / o.value
        return DualRat(q, (self.eps - q * o.eps) / o.value)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return DualRat(1) / (self ** -k)
        return DualRat(self.value ** k, k * self.value ** (k - 1) * self.eps if k else 0)

    def is_unit(self) -> bool:
        return self.value != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.value == o.value and self.eps == o.eps

    def __hash__(self):
        if self.eps == 0:
            return hash(self.value)
        return hash((self.value, self.eps))

    def __bool__(self):
        return bool(self.value) or bool(self.eps)

    def __repr__(self):
        return f"DualRat({self.value}, {self.eps})"

    def __str__(self):
        return f"{self.value} + {self.eps}ε"


def value_of(c):
    """Value part of a coefficient (identity on plain rationals)."""
    return c.value if isinstance(c, DualRat) else Fraction(c)


def eps_of(c):
    """Infinitesimal part of a coefficient (zero for plain rationals)."""
    return c.eps if isinstance(c, DualRat) else Fraction(0)


def is_unit(c) -> bool:
    if isinstance(c, DualRat):
        return c.value != 0
    return c != 0
