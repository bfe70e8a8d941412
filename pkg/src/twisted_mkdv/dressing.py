"""Canonical form of Miura opers, the elements phi(Lambda_r), and mKdV flows.

``dress`` finds ``U = U_{-1} + U_{-2} + ...`` with
``exp(ad U)(d + Lambda + V) = d + Lambda + sum_{j<0} H_j Lambda^j`` where
every ``H_j`` is central. The grade-g coefficient of the conjugated operator
depends on ``U_{g-1}`` only through ``[U_{g-1}, Lambda]``, so U is solved
one grade at a time from the top down with ``invert_ad_lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .errors import CenterGapError, DepthError, InconsistentSystemError
from .exact import RatFn, solve
from .exact.ratfn import linear_rows
from .generation import require_generic
from .loop import (
    AlgebraDims,
    GradedElem,
    LoopOperator,
    Vec,
    ad_exp,
    comm_vec,
    commutator,
    conjugate,
    has_center,
    invert_ad_lambda,
    is_a2_vec,
    is_zero_vec,
    lambda_power,
    vadd,
    vderiv,
    vneg,
    vones,
    vscale,
    vsub,
    vzero,
)
from .miura import MiuraOper, family_derivative, family_oper, tangent_space_check

Gauge = Callable[[int], object]


@dataclass(frozen=True)
class DressingResult:
    """``U`` through grade ``-depth`` and central parts ``H[j]`` for ``-depth < j < 0``."""

    U: GradedElem
    H: dict
    depth: int
    algebra: str

    @property
    def dims(self) -> AlgebraDims:
        return self.U.dims


def dress(L: MiuraOper | LoopOperator, depth: int, algebra: str = "A2", gauge: Gauge | None = None) -> DressingResult:
    """Solve for the dressing element grade by grade.

    ``gauge(grade)`` may return a scalar function added along the all-ones
    direction of ``U_grade`` when that direction is central; the default is
    zero (canonical gauge). For ``algebra="A2"`` every ``U_j`` is checked to
    lie in the twisted subalgebra.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    op = L.operator() if isinstance(L, MiuraOper) else L
    body = op.body
    dims = body.dims
    N = dims.N
    P: list[dict[int, Vec]] = [dict(body.terms)]
    U: dict[int, Vec] = {}
    H: dict[int, RatFn] = {}
    for g in range(0, -depth, -1):
        total = body.terms.get(g, vzero(N))
        u_items = sorted(U.items(), reverse=True)
        k = 1
        while 1 - k >= g:
            if len(P) <= k:
                P.append({})
            acc = None
            for i, u in u_items:
                b = P[k - 1].get(g - i)
                if b is None:
                    continue
                c = comm_vec(u, i, b, g - i)
                acc = c if acc is None else vadd(acc, c)
            if k == 1 and op.has_d and g in U:
                c = vneg(vderiv(U[g]))
                acc = c if acc is None else vadd(acc, c)
            if acc is not None:
                P[k][g] = acc
                total = vadd(total, vscale(acc, Fraction(1, factorial(k))))
            k += 1
        Y, c = invert_ad_lambda(total, g)
        if g < 0:
            if not c.is_zero() and not has_center(g, dims, algebra):
                raise AssertionError(f"non-central residue at grade {g} for {algebra}")
            if not c.is_zero():
                H[g] = c
        elif not c.is_zero():
            raise AssertionError("grade-0 part of the oper is not trace free")
        if gauge is not None and has_center(g - 1, dims, algebra):
            t = gauge(g - 1)
            if t is not None and t != 0:
                Y = vadd(Y, vscale(vones(N), t))
        if algebra == "A2" and not is_a2_vec(Y, g - 1):
            raise AssertionError(f"U_{g - 1} left the twisted subalgebra")
        if not is_zero_vec(Y):
            U[g - 1] = Y
            # the first-order term [U_{g-1}, Lambda] completes grade g
            c1 = comm_vec(Y, g - 1, body.terms.get(1, vones(N)), 1)
            P[1][g] = vadd(P[1][g], c1) if g in P[1] else c1
    return DressingResult(GradedElem(dims, U), H, depth, algebra)


def canonical_form(L: MiuraOper | LoopOperator, res: DressingResult) -> LoopOperator:
    """``exp(ad U)(L)`` recomputed independently through grade ``-(depth-1)``."""
    op = L.operator() if isinstance(L, MiuraOper) else L
    return ad_exp(res.U, op, max(res.depth - 1, 1))


def check_canonical(L, res: DressingResult) -> bool:
    """Negative grades of the conjugated operator are central, matching H."""
    out = canonical_form(L, res).body
    dims = res.dims
    for g in range(-1, -res.depth, -1):
        b = out.grade(g)
        if g in res.H:
            if b != vscale(vones(dims.N), res.H[g]):
                return False
        elif not is_zero_vec(b):
            return False
    return out.grade(0) == vzero(dims.N) and out.grade(1) == vones(dims.N)


# ---------------------------------------------------------------- phi and flows

def _check_r(r: int, dims: AlgebraDims, algebra: str) -> None:
    if r <= 0 or not has_center(r, dims, algebra):
        raise CenterGapError(f"r = {r} is not an admissible flow index for {algebra} with n = {dims.n}")


def phi_element(L: MiuraOper | LoopOperator, r: int, res: DressingResult | None = None, algebra: str = "A2") -> GradedElem:
    """``exp(-ad U)(Lambda^r)`` exact at grades ``>= r - depth``."""
    op = L.operator() if isinstance(L, MiuraOper) else L
    dims = op.dims
    _check_r(r, dims, algebra)
    if res is None:
        res = dress(op, r, algebra)
    if res.depth < r:
        raise DepthError(f"dressing depth {res.depth} is below the flow index {r}")
    return conjugate(-res.U, lambda_power(r, dims, algebra), r - res.depth)


def mkdv_vector(L: MiuraOper | LoopOperator, r: int, depth: int | None = None, algebra: str = "A2",
                gauge: Gauge | None = None, res: DressingResult | None = None) -> Vec:
    """``-d/dx`` of the grade-0 diagonal of ``phi(Lambda_r)``.

    A precomputed dressing of depth >= r may be passed to share work
    between several flow indices.
    """
    op = L.operator() if isinstance(L, MiuraOper) else L
    _check_r(r, op.dims, algebra)
    if res is None:
        res = dress(op, depth or r, algebra, gauge)
    phi = phi_element(op, r, res, algebra)
    return vneg(vderiv(phi.grade(0)))


def commutator_flow(L: MiuraOper | LoopOperator, r: int, depth: int | None = None, algebra: str = "A2",
                    res: DressingResult | None = None) -> GradedElem:
    """``[phi^+, L]`` where ``phi^+`` keeps the grades >= 0 and ``[X, d] = -X'``."""
    op = L.operator() if isinstance(L, MiuraOper) else L
    if res is None:
        res = dress(op, depth or r, algebra)
    phi_plus = phi_element(op, r, res, algebra).part(0, None)
    out = commutator(phi_plus, op.body)
    if op.has_d:
        out = out - phi_plus.derivative()
    return out


def flow_forms_agree(L, r: int, algebra: str = "A2") -> bool:
    """The commutator form is concentrated in grade 0 and equals ``-(phi^0)'``."""
    op = L.operator() if isinstance(L, MiuraOper) else L
    res = dress(op, r, algebra)
    c = commutator_flow(op, r, algebra=algebra, res=res)
    if any(g != 0 for g in c.terms):
        return False
    return c.grade(0) == mkdv_vector(op, r, algebra=algebra, res=res)


def _a1_only_gauge(dims: AlgebraDims) -> Gauge:
    # an x-dependent shift along central directions that A^(1) has but A^(2) lacks
    def gauge(grade: int):
        if has_center(grade, dims, "A1") and not has_center(grade, dims, "A2"):
            return RatFn.const(Fraction(grade, 7)) + RatFn.x() * Fraction(1, 3)
        return None

    return gauge


def a1_vs_a2_flow(L: MiuraOper, r: int) -> bool:
    """Flow of L computed as an A^(1) oper equals the A^(2) flow.

    The A^(1) dressing uses a deliberately shifted gauge along centers that
    only A^(1) has, so the two computations go through different U.
    """
    a2 = mkdv_vector(L, r, algebra="A2")
    a1 = mkdv_vector(L, r, algebra="A1", gauge=_a1_only_gauge(L.dims))
    return a1 == a2


# ---------------------------------------------------------------- tangency

@dataclass(frozen=True)
class TangencyReport:
    J: tuple
    c: tuple
    r: int
    flow: Vec
    derivatives: tuple
    gamma: tuple | None
    residual: Vec

    @property
    def ok(self) -> bool:
        return self.gamma is not None and is_zero_vec(self.residual)

    @property
    def flow_is_zero(self) -> bool:
        return is_zero_vec(self.flow)


def solve_combination(target: Vec, basis: Sequence[Vec]):
    """Rational gamma with ``sum gamma_i basis_i = target``, or None.

    Each component is put over a common denominator and polynomial
    coefficients are matched, giving an exact linear system over Q.
    """
    rows = linear_rows(list(basis) + [target])
    m = len(basis)
    try:
        return tuple(solve([r[:m] for r in rows], [r[m] for r in rows]))
    except InconsistentSystemError:
        return None


def verify_tangency(J: Sequence[int], c: Sequence, r: int, n: int, depth: int | None = None) -> TangencyReport:
    """Express the r-th flow at ``mu^J(c)`` through the c-derivatives of the family."""
    return verify_tangency_many(J, c, [r], n, depth)[0]


def verify_tangency_many(J: Sequence[int], c: Sequence, rs: Sequence[int], n: int,
                         depth: int | None = None) -> list[TangencyReport]:
    """``verify_tangency`` for several r sharing one dressing and one set of derivatives."""
    fam = family_oper(J, c, n)
    require_generic(fam.y)
    op = fam.oper.operator()
    for r in rs:
        _check_r(r, op.dims, "A2")
    res = dress(op, max([depth or 0, *rs]))
    derivs = tuple(family_derivative(J, c, i, n) for i in range(1, len(J) + 1))
    out = []
    for r in rs:
        flow = mkdv_vector(op, r, res=res)
        gamma = solve_combination(flow, derivs)
        residual = flow
        if gamma is not None:
            for g, d in zip(gamma, derivs):
                residual = vsub(residual, vscale(d, g))
        out.append(TangencyReport(tuple(J), tuple(c), r, flow, derivs, gamma, residual))
    return out


# ---------------------------------------------------------------- structural difference

def difference_pattern(X: Vec, j: int, n: int) -> bool:
    """Whether an A^(2) tangent has the shape forced by a last step in direction j.

    j = 0: ``u (e_N - e_1)``. 1 <= j <= n-1: supported on positions
    ``{j, j+1, N-j, N+1-j}`` with ``X_j = -X_{j+1}`` and
    ``X_{N-j} = -X_{N+1-j}``. j = n: supported on ``{n, n+1, n+2}``.
    Positions are 1-based.
    """
    N = 2 * n + 1
    if not tangent_space_check(X):
        return False

    def at(p):
        return X[p - 1]

    if j == 0:
        allowed = {1, N}
    elif j < n:
        allowed = {j, j + 1, N - j, N + 1 - j}
        if not (at(j) + at(j + 1)).is_zero() or not (at(N - j) + at(N + 1 - j)).is_zero():
            return False
    else:
        allowed = {n, n + 1, n + 2}
    return all(at(p).is_zero() for p in range(1, N + 1) if p not in allowed)
