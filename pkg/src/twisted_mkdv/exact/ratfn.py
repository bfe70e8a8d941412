"""Reduced rational functions in one variable with rational coefficients.

Canonical form: ``gcd(num, den) == 1`` and ``den`` monic, so two RatFn are
equal exactly when their numerators and denominators are equal.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError, PoleError
from .poly import Poly, gcd


class RatFn:
    __slots__ = ("num", "den", "_deriv", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly.one()
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_dual() or den.is_dual():
            raise TypeError("RatFn coefficients must be rational; split dual parts first")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            if not den.is_constant():
                g = gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lead = den.lc()
            if lead != 1:
                num = num * (Fraction(1) / lead)
                den = den.monic()
        self.num = num
        self.den = den
        self._deriv = None
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFn":
        r = object.__new__(cls)
        r.num, r.den, r._deriv, r._hash = num, den, None, None
        return r

    @classmethod
    def const(cls, c) -> "RatFn":
        return cls._raw(Poly.const(c), Poly.one())

    @classmethod
    def x(cls) -> "RatFn":
        return cls._raw(Poly.x(), Poly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    # arithmetic
    @staticmethod
    def _lift(other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, Poly):
            return RatFn._raw(other, Poly.one())
        if isinstance(other, (int, Fraction)):
            return RatFn.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            num = self.num + o.num
            if self.den.is_constant():
                return RatFn._raw(num, self.den)
            return RatFn(num, self.den)
        if self.den.is_constant():
            return RatFn._raw(self.num * o.den + o.num, o.den)
        if o.den.is_constant():
            return RatFn._raw(self.num + o.num * self.den, self.den)
        g = gcd(self.den, o.den)
        if g.is_constant():
            return RatFn._raw(self.num * o.den + o.num * self.den, self.den * o.den)
        a_cof = self.den.exact_div(g)
        b_cof = o.den.exact_div(g)
        num = self.num * b_cof + o.num * a_cof
        if num.is_zero():
            return RatFn._raw(Poly.zero(), Poly.one())
        h = gcd(num, g)
        if not h.is_constant():
            num = num.exact_div(h)
            g = g.exact_div(h)
        return RatFn._raw(num, a_cof * g * b_cof)

    __radd__ = __add__

    def __neg__(self):
        return RatFn._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFn._raw(Poly.zero(), Poly.one())
            return RatFn._raw(self.num * other, self.den)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return RatFn._raw(Poly.zero(), Poly.one())
        a, b, c, d = self.num, self.den, o.num, o.den
        if not d.is_constant():
            g1 = gcd(a, d)
            if not g1.is_constant():
                a, d = a.exact_div(g1), d.exact_div(g1)
        if not b.is_constant():
            g2 = gcd(c, b)
            if not g2.is_constant():
                c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFn._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        lead = self.num.lc()
        return RatFn._raw(self.den * (Fraction(1) / lead), self.num.monic())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a rational function by zero")
            return RatFn._raw(self.num * (Fraction(1) / Fraction(other)), self.den)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFn":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFn._raw(self.num ** k, self.den ** k)

    def derivative(self) -> "RatFn":
        """d/dx, cached on the instance."""
        if self._deriv is None:
            n, d = self.num, self.den
            if d.is_constant():
                self._deriv = RatFn._raw(n.derivative(), d)
            else:
                # (n/d)' = (n' d - n d') / d^2; only gcd(d, d') can cancel
                dd = d.derivative()
                g = gcd(d, dd)
                d_red = d.exact_div(g)
                num = n.derivative() * d_red - n * dd.exact_div(g)
                self._deriv = RatFn(num, d_red * d)
        return self._deriv

    def __call__(self, point):
        point = Fraction(point)
        dv = self.den(point)
        if dv == 0:
            raise PoleError(f"pole of {self} at x = {point}")
        return self.num(point) / dv

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFn({self.num!s}, {self.den!s})"

    def __str__(self):
        if self.den == Poly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"


ZERO = RatFn.const(0)
ONE = RatFn.const(1)


def log_deriv(f: Poly) -> RatFn:
    """Reduced ``f'/f``."""
    if f.is_zero():
        raise DomainError("log-derivative of the zero polynomial")
    return RatFn(f.derivative(), f)


def common_numerators(parts) -> list[Poly]:
    """Numerators of ``parts`` over their least common denominator.

    A linear relation ``sum q_i parts_i = 0`` with constant q_i holds iff
    the same relation holds coefficientwise for these polynomials.
    """
    den = Poly.one()
    for p in parts:
        if not den.is_constant() or not p.den.is_constant():
            den = (den * p.den).exact_div(gcd(den, p.den))
    return [p.num * den.exact_div(p.den) for p in parts]


def linear_rows(columns) -> list[list[Fraction]]:
    """Rows of the coefficient-matching system for a list of function columns.

    ``columns[j]`` is a sequence of RatFn (one per component); the rows
    express ``sum_j q_j columns[j] == 0`` componentwise as equations over Q.
    """
    rows: list[list[Fraction]] = []
    if not columns:
        return rows
    for k in range(len(columns[0])):
        polys = common_numerators([col[k] for col in columns])
        top = max(p.degree for p in polys)
        for d in range(top + 1):
            rows.append([p.coeff(d) for p in polys])
    return rows
