"""Dense univariate polynomials over Q or over the dual numbers Q[eps]/(eps^2).

Coefficients are stored lowest degree first with no trailing zeros; the zero
polynomial is the empty tuple. Instances are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DivisibilityError, FieldError
from .dual import DualRat, eps_of, is_unit, value_of


def _norm(c):
    if isinstance(c, DualRat):
        return c
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


class Poly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    # constructors
    @classmethod
    def x(cls) -> "Poly":
        return cls._raw((Fraction(0), Fraction(1)))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def one(cls) -> "Poly":
        return cls._raw((Fraction(1),))

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw(())

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Poly":
        p = cls.one()
        for r in roots:
            p = p * cls((-_norm(r), 1))
        return p

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_dual(self) -> bool:
        return any(isinstance(c, DualRat) for c in self.coeffs)

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def value_part(self) -> "Poly":
        return Poly(value_of(c) for c in self.coeffs)

    def eps_part(self) -> "Poly":
        return Poly(eps_of(c) for c in self.coeffs)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _norm(other)
            if c == 0:
                return Poly.zero()
            return Poly([a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        if not self.is_dual() and not other.is_dual():
            return _rat_mul(a, b)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.coeffs[-1]
        if not is_unit(lead):
            raise FieldError("leading coefficient of divisor is not invertible")
        inv = 1 / lead if isinstance(lead, DualRat) else Fraction(1) / lead
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        ob = other.coeffs
        for k in range(dq, -1, -1):
            q = rem[k + len(ob) - 1] * inv
            quot[k] = q
            if q == 0:
                continue
            for i, c in enumerate(ob):
                rem[k + i] = rem[k + i] - q * c
        rem = rem[: len(ob) - 1]
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisibilityError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        if not is_unit(lead):
            raise FieldError("cannot normalize: leading coefficient not invertible")
        inv = 1 / lead if isinstance(lead, DualRat) else Fraction(1) / lead
        return Poly._raw(tuple(c * inv for c in self.coeffs[:-1]) + (_norm(1),))

    def derivative(self) -> "Poly":
        return Poly._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i)) if len(self.coeffs) > 1 else Poly.zero()

    def __call__(self, point):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    # comparisons
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, DualRat)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if isinstance(c, DualRat):
                cs = f"({c})"
            elif mono and c == 1:
                cs = ""
            elif mono and c == -1:
                cs = "-"
            else:
                cs = f"({c})" if c.denominator != 1 else str(c)
            parts.append(f"{cs}*{mono}" if cs not in ("", "-") and mono else f"{cs}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _scaled_ints(cs: tuple) -> tuple[list[int], int]:
    """Integer numerators over a common denominator."""
    from math import lcm

    den = 1
    for c in cs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    if den == 1:
        return [c.numerator for c in cs], 1
    return [c.numerator * (den // c.denominator) for c in cs], den


def _rat_mul(a: tuple, b: tuple) -> Poly:
    # integer convolution; one Fraction per output coefficient
    ia, da = _scaled_ints(a)
    ib, db = _scaled_ints(b)
    out = [0] * (len(ia) + len(ib) - 1)
    for i, x in enumerate(ia):
        if x:
            for j, y in enumerate(ib):
                out[i + j] += x * y
    den = da * db
    if den == 1:
        return Poly._raw(tuple(Fraction(c) for c in out))
    return Poly._raw(tuple(Fraction(c, den) for c in out))


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0) == 0``.

    Over the dual numbers the Euclidean algorithm runs only while every
    remainder has an invertible leading coefficient, otherwise FieldError.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if not a.is_dual() and not b.is_dual():
        return _rat_gcd(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _primitive(coeffs: list[int]) -> list[int]:
    from math import gcd as igcd

    g = 0
    for c in coeffs:
        g = igcd(g, c)
        if g == 1:
            break
    if g == 0:
        return coeffs
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _to_int(p: Poly) -> list[int]:
    return _primitive(_scaled_ints(p.coeffs)[0])


def _rat_gcd(a: Poly, b: Poly) -> Poly:
    # primitive PRS over Z; keeps coefficients small without Fraction churn
    f, g = _to_int(a), _to_int(b)
    if len(f) < len(g):
        f, g = g, f
    while g:
        if len(g) == 1:
            return Poly.one()
        f = _int_prem(f, g)
        f, g = g, (_primitive(f) if f else f)
    return Poly(f).monic()


def _int_prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (lowest first)."""
    r = list(f)
    lg = g[-1]
    dg = len(g) - 1
    while r and len(r) - 1 >= dg:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lg for c in r]
        for i, c in enumerate(g):
            r[shift + i] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def wronskian(f: Poly, g: Poly) -> Poly:
    """``Wr(f, g) = f g' - f' g``."""
    return f * g.derivative() - f.derivative() * g
