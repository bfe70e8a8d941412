"""Miura opers ``d + Lambda + V`` of type A^(2)_2n attached to polynomial tuples.

The oper of a tuple is ``V = -sum_i ln'(y_i) h_i``. Generation steps act on
opers by Riccati deformations ``V -> V - g h_j`` with ``g = ln'(y_new/y_old)``,
which is the same as conjugating by ``exp(g f_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, NotASolutionError
from .exact import ZERO, DualRat, RatFn, log_deriv
from .generation import Generation, PolyTuple, generate, right_side
from .loop import (
    AlgebraDims,
    GradedElem,
    LoopOperator,
    Vec,
    a2_check,
    ad_exp,
    alpha_pairing,
    exp_series,
    f_vector,
    h_vector,
    identity,
    is_zero_vec,
    log_series,
    miura_operator,
    product,
    vec,
    vscale,
    vsub,
    vzero,
)


@dataclass(frozen=True)
class MiuraOper:
    """The operator ``d + Lambda + diag(v)``; A^(2) symmetry checked unless ``check=False``."""

    dims: AlgebraDims
    v: Vec
    check: bool = True

    def __post_init__(self):
        v = vec(self.v)
        if len(v) != self.dims.N:
            raise ValueError(f"potential has {len(v)} entries, expected {self.dims.N}")
        object.__setattr__(self, "v", v)
        if self.check and not a2_check(v):
            raise DomainError("potential violates trace zero or the A2 pairing v_j + v_{N+1-j} = 0")

    @classmethod
    def trivial(cls, n: int) -> "MiuraOper":
        d = AlgebraDims(n)
        return cls(d, vzero(d.N))

    @property
    def n(self) -> int:
        return self.dims.n

    def operator(self) -> LoopOperator:
        return miura_operator(self.dims, self.v)

    def alpha(self, j: int) -> RatFn:
        return alpha_pairing(self.v, j, self.n)

    def __eq__(self, other):
        if not isinstance(other, MiuraOper):
            return NotImplemented
        return self.dims == other.dims and self.v == other.v

    def __hash__(self):
        return hash((self.dims, self.v))


def tangent_space_check(X: Sequence) -> bool:
    """Trace zero and ``X_j + X_{N+1-j} = 0``."""
    return a2_check(X)


def oper_from_tuple(y: PolyTuple) -> MiuraOper:
    """``V = -sum_i ln'(y_i) h_i`` for a tuple of nonzero rational polynomials."""
    n = y.n
    d = AlgebraDims(n)
    V = vzero(d.N)
    for i, p in enumerate(y.y):
        if p.is_zero():
            raise DomainError(f"y_{i} is the zero polynomial")
        if p.is_dual():
            raise TypeError("oper_from_tuple needs rational coefficients; use family_derivative for dual tuples")
        V = vsub(V, vscale(h_vector(n, i), log_deriv(p)))
    return MiuraOper(d, V)


def potential_entries(y: PolyTuple) -> Vec:
    """Entrywise formula ``v_i = ln'(y_i/y_{i-1})``, ``v_n = ln'(y_n^2/y_{n-1})``,
    ``v_{n+1} = 0`` and ``v_{N+1-i} = -v_i``; an independent route to the oper."""
    n = y.n
    N = 2 * n + 1
    lds = [log_deriv(p) for p in y.y]
    v = [ZERO] * N
    for i in range(1, n + 1):
        val = lds[i] - lds[i - 1] if i < n else 2 * lds[n] - lds[n - 1]
        v[i - 1] = val
        v[N - i] = -val
    return tuple(v)


def riccati_residual(L: MiuraOper, j: int, g: RatFn) -> RatFn:
    """``g' - <alpha_j, V> g + g^2``."""
    return g.derivative() - L.alpha(j) * g + g * g


def riccati_deform(L: MiuraOper, j: int, g: RatFn) -> MiuraOper:
    """``V - g h_j``, allowed only when g solves the Riccati equation in direction j."""
    res = riccati_residual(L, j, g)
    if not res.is_zero():
        raise NotASolutionError(f"Riccati residual in direction {j} is {res}, not zero")
    return MiuraOper(L.dims, vsub(L.v, vscale(h_vector(L.n, j), g)))


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class OperFamily:
    """The oper ``mu^J(c)`` with its Riccati data ``g_l`` and generation record."""

    J: tuple
    c: tuple
    g: tuple
    oper: MiuraOper
    generation: Generation

    @property
    def n(self) -> int:
        return self.oper.n

    @property
    def y(self) -> PolyTuple:
        return self.generation.y


def family_oper(J: Sequence[int], c: Sequence, n: int) -> OperFamily:
    """Build ``mu^J(c)`` by successive Riccati deformations of the trivial oper.

    Each step uses ``g_l = ln'(y_new/y_old)`` in direction ``j_l``; the
    result is asserted equal to the oper of the generated tuple.
    """
    gen = generate(J, c, n)
    L = MiuraOper.trivial(n)
    gs = []
    for step, (before, after) in enumerate(zip(gen.tuples, gen.tuples[1:])):
        j = gen.J[step]
        g = log_deriv(after[j]) - log_deriv(before[j])
        L = riccati_deform(L, j, g)
        gs.append(g)
    direct = oper_from_tuple(gen.y)
    if L != direct:
        raise AssertionError("Riccati chain disagrees with the oper of the generated tuple")
    return OperFamily(tuple(J), tuple(c), tuple(gs), L, gen)


def dressing_exponent(fam: OperFamily, floor: int) -> GradedElem:
    """``W = log(exp(g_m f_{j_m}) ... exp(g_1 f_{j_1}))`` exact at grades >= floor.

    With this W, ``exp(ad W)`` carries the trivial oper to ``mu^J(c)``; the
    dressing element of the family is ``U^J = -W``.
    """
    d = AlgebraDims(fam.n)
    M = identity(d)
    for j, g in zip(fam.J, fam.g):
        X = GradedElem(d, {-1: vscale(f_vector(d, j), g)})
        M = product(exp_series(X, floor), M, floor)
    return log_series(M, floor)


def family_element(fam: OperFamily, floor: int) -> GradedElem:
    """``U^J(c)`` with ``mu^J(c) = exp(-ad U^J)(d + Lambda)``."""
    return -dressing_exponent(fam, floor)


def conjugated_trivial(fam: OperFamily, depth: int) -> LoopOperator:
    """``exp(-ad U^J)(d + Lambda)`` through grade ``-depth``."""
    W = dressing_exponent(fam, -(depth + 1))
    return ad_exp(W, MiuraOper.trivial(fam.n).operator(), depth)


# ---------------------------------------------------------------- derivatives

def family_derivative(J: Sequence[int], c: Sequence, i: int, n: int) -> Vec:
    """``d mu^J / d c_i`` (1-based i) as a diagonal vector, via dual numbers.

    ``y = y0 + eps y1`` gives ``d ln'(y) = (y1/y0)'``, so the tangent is
    ``-sum_k (y1_k/y0_k)' h_k``.
    """
    m = len(J)
    if not 1 <= i <= m:
        raise IndexError(f"parameter index {i} outside 1..{m}")
    cd = [DualRat(Fraction(cc) if not isinstance(cc, DualRat) else cc.value, 1 if k == i - 1 else 0)
          for k, cc in enumerate(c)]
    gen = generate(J, cd, n)
    X = vzero(2 * n + 1)
    for k, p in enumerate(gen.y.y):
        y0, y1 = p.value_part(), p.eps_part()
        if y1.is_zero():
            continue
        X = vsub(X, vscale(h_vector(n, k), RatFn(y1, y0).derivative()))
    return X


def last_step_closed_form(fam: OperFamily) -> tuple[Vec, Fraction]:
    """``(R_j / y_j^2) h_j`` for the last direction j, and the step's eps.

    The derivative in the last parameter equals ``-eps`` times the returned
    vector.
    """
    if not fam.J:
        raise ValueError("the empty sequence has no last step")
    j = fam.J[-1]
    y = fam.y
    R = right_side(y, j)
    base = RatFn(R, y[j] ** 2)
    return vscale(h_vector(fam.n, j), base), fam.generation.steps[-1].eps


def proportionality(X: Vec, Y: Vec):
    """The rational q with ``X = q Y``, or None if no such constant exists."""
    q = None
    for a, b in zip(X, Y):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        ratio = a / b
        if not ratio.is_constant():
            return None
        if q is None:
            q = ratio.constant_value()
        elif q != ratio.constant_value():
            return None
    return q if q is not None else (Fraction(0) if is_zero_vec(X) else None)
