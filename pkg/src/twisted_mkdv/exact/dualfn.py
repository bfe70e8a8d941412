"""First-order jets of rational functions: ``value + eps * tangent``.

Used where a whole rational function (rather than a scalar) carries an
infinitesimal, e.g. perturbing a Miura potential ``v -> v + eps * X``.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfn import RatFn, ZERO


class DualFn:
    __slots__ = ("value", "tangent")

    def __init__(self, value, tangent=ZERO):
        self.value = value if isinstance(value, RatFn) else RatFn.const(value)
        self.tangent = tangent if isinstance(tangent, RatFn) else RatFn.const(tangent)

    @staticmethod
    def _lift(other):
        if isinstance(other, DualFn):
            return other
        if isinstance(other, (RatFn, int, Fraction)):
            return DualFn(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualFn(self.value + o.value, self.tangent + o.tangent)

    __radd__ = __add__

    def __neg__(self):
        return DualFn(-self.value, -self.tangent)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DualFn(self.value * other, self.tangent * other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualFn(self.value * o.value, self.value * o.tangent + self.tangent * o.value)

    __rmul__ = __mul__

    def derivative(self) -> "DualFn":
        return DualFn(self.value.derivative(), self.tangent.derivative())

    def is_zero(self) -> bool:
        return self.value.is_zero() and self.tangent.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.value == o.value and self.tangent == o.tangent

    def __hash__(self):
        return hash((self.value, self.tangent))

    def __repr__(self):
        return f"DualFn({self.value!s}, {self.tangent!s})"
