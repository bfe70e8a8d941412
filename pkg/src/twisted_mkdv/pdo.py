"""Formal pseudodifferential operators ``sum a_i d^i`` with rational-function coefficients.

Products use the generalized Leibniz rule
``d^i u = sum_{k>=0} binom(i, k) u^(k) d^(i-k)`` with
``binom(i, k) = i (i-1) ... (i-k+1) / k!``, valid for negative i as a
formal series. An operator is exact at orders >= ``floor``; ``floor=None``
marks an operator known completely (finitely many terms).

Coefficients may be RatFn or DualFn; the latter gives exact directional
derivatives of Miura maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import ONE, ZERO, DualFn, RatFn, nullspace
from .exact.ratfn import linear_rows
from .loop import Vec


def binom(i: int, k: int) -> Fraction:
    """``i (i-1) ... (i-k+1) / k!`` for any integer i and k >= 0."""
    num = 1
    den = 1
    for t in range(k):
        num *= i - t
        den *= t + 1
    return Fraction(num, den)


def _one_like(c):
    return DualFn(ONE) if isinstance(c, DualFn) else ONE


@dataclass(frozen=True)
class PDO:
    terms: Mapping[int, object] = field(default_factory=dict)
    floor: int | None = None

    def __post_init__(self):
        clean = {}
        for i, a in self.terms.items():
            if isinstance(a, (int, Fraction)):
                a = RatFn.const(a)
            if self.floor is not None and i < self.floor:
                continue
            if not a.is_zero():
                clean[i] = a
        object.__setattr__(self, "terms", clean)

    @classmethod
    def d(cls, k: int = 1) -> "PDO":
        return cls({k: ONE})

    @classmethod
    def scalar(cls, a) -> "PDO":
        return cls({0: a})

    @property
    def top(self) -> int | None:
        return max(self.terms) if self.terms else None

    def coeff(self, i: int):
        return self.terms.get(i, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def is_differential(self) -> bool:
        return self.floor is None and all(i >= 0 for i in self.terms)

    def truncate(self, floor: int) -> "PDO":
        f = floor if self.floor is None else max(floor, self.floor)
        return PDO(self.terms, f)

    def plus_part(self) -> "PDO":
        """Orders >= 0 as an exact differential operator."""
        if self.floor is not None and self.floor > 0:
            raise ValueError("operator not known down to order 0")
        return PDO({i: a for i, a in self.terms.items() if i >= 0})

    def shift(self, m: int) -> "PDO":
        """Right multiplication by ``d^m``."""
        return PDO({i + m: a for i, a in self.terms.items()}, None if self.floor is None else self.floor + m)

    def __add__(self, other: "PDO") -> "PDO":
        out = dict(self.terms)
        for i, a in other.terms.items():
            out[i] = out[i] + a if i in out else a
        return PDO(out, _max_floor(self.floor, other.floor))

    def __neg__(self) -> "PDO":
        return PDO({i: -a for i, a in self.terms.items()}, self.floor)

    def __sub__(self, other: "PDO") -> "PDO":
        return self + (-other)

    def scale(self, s) -> "PDO":
        return PDO({i: a * s for i, a in self.terms.items()}, self.floor)

    def __mul__(self, other: "PDO") -> "PDO":
        return pdo_mul(self, other)

    def same_as(self, other: "PDO", floor: int | None = None) -> bool:
        f = _max_floor(self.floor, other.floor)
        if floor is not None:
            f = floor if f is None else max(f, floor)
        keys = set(self.terms) | set(other.terms)
        for i in keys:
            if f is not None and i < f:
                continue
            a, b = self.terms.get(i), other.terms.get(i)
            if a is None or b is None:
                if (a if a is not None else b).is_zero():
                    continue
                return False
            if not (a - b).is_zero():
                return False
        return True


def _max_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def pdo_mul(a: PDO, b: PDO, floor: int | None = None) -> PDO:
    """``a b`` exact at orders >= the returned floor.

    The floor is the largest of the requested one, ``a.floor + b.top`` and
    ``b.floor + a.top``. A product whose left factor has negative orders is
    an infinite series and needs a floor.
    """
    cands = [floor]
    if a.floor is not None and b.top is not None:
        cands.append(a.floor + b.top)
    if b.floor is not None and a.top is not None:
        cands.append(b.floor + a.top)
    cands = [c for c in cands if c is not None]
    f = max(cands) if cands else None
    if f is None and b.terms and any(i < 0 for i in a.terms):
        raise ValueError("product with negative orders on the left needs a floor")
    out: dict[int, object] = {}
    derivs: dict[int, list] = {j: [bj] for j, bj in b.terms.items()}
    for i, ai in a.terms.items():
        for j in b.terms:
            ds = derivs[j]
            k = 0
            while True:
                order = i - k + j
                if f is not None and order < f:
                    break
                if i >= 0 and k > i:
                    break
                while len(ds) <= k:
                    ds.append(ds[-1].derivative())
                dk = ds[k]
                if dk.is_zero():
                    break
                term = ai * dk
                if k:
                    term = term * binom(i, k)
                out[order] = out[order] + term if order in out else term
                k += 1
    return PDO(out, f)


def pdo_pow(a: PDO, k: int, floor: int | None = None) -> PDO:
    if k < 1:
        raise ValueError("power must be >= 1")
    top = a.top or 0
    result = a
    for step in range(2, k + 1):
        # leave room for the orders still to be multiplied in
        f = None if floor is None else floor - (k - step) * top
        result = pdo_mul(result, a, f)
    return result


# ---------------------------------------------------------------- roots

def _check_shape(L: PDO) -> int:
    if not L.is_differential():
        raise ValueError("expected an exact differential operator")
    N = L.top
    if N is None or N < 1 or not (L.coeff(N) - ONE).is_zero() or not L.coeff(N - 1).is_zero():
        raise ValueError("expected d^N + (terms of order <= N-2)")
    return N


def pdo_root(L: PDO, floor: int) -> PDO:
    """The N-th root ``d + sum_{i<=0} a_i d^i`` of ``L = d^N + ...``, exact at orders >= floor.

    The coefficient of ``d^(N-1-k)`` in ``R^N`` is ``N a_{-k}`` plus terms in
    higher coefficients, so the ``a_{-k}`` are found one at a time.
    """
    N = _check_shape(L)
    R = PDO.d()
    for k in range(0, 1 - floor + 1):
        order = N - 1 - k
        Rk = R.truncate(-k)
        power = pdo_pow(Rk, N, order)
        a = (L.coeff(order) - power.coeff(order)) * Fraction(1, N)
        if not a.is_zero():
            R = R + PDO({-k: a})
    return PDO(R.terms, floor)


def pdo_root_refine(L: PDO, floor: int, max_iter: int | None = None) -> PDO:
    """The same root by fixed-point refinement ``R <- R + (L - R^N) d^(1-N) / N``.

    Each pass fixes at least one more order, so the iteration stops once R
    is unchanged down to the floor.
    """
    N = _check_shape(L)
    R = PDO(PDO.d().terms, floor)
    limit = max_iter if max_iter is not None else 4 - floor
    for _ in range(limit):
        err = L.truncate(floor + N - 1) - pdo_pow(R, N, floor + N - 1)
        if err.is_zero():
            return R
        R = R + err.shift(1 - N).scale(Fraction(1, N))
        R = PDO(R.terms, floor)
    err = L.truncate(floor + N - 1) - pdo_pow(R, N, floor + N - 1)
    if not err.is_zero():
        raise ArithmeticError("root refinement did not settle")
    return R


def default_floor(n: int, r: int = 1) -> int:
    """Root floor ``-(2n+2)``, lowered when ``R^r`` needs more orders."""
    return min(-(2 * n + 2), 1 - r)


def kdv_vector(L: PDO, r: int, floor: int | None = None) -> PDO:
    """``[L, (L^(r/N))_+]``, checked to have order <= N - 2."""
    N = _check_shape(L)
    if r < 1:
        raise ValueError("flow index must be >= 1")
    n = (N - 1) // 2
    f = floor if floor is not None else default_floor(n, r)
    if f > 1 - r:
        raise ValueError(f"floor {f} too high to determine (L^(r/N))_+ for r = {r}")
    R = pdo_root(L, f)
    P = pdo_pow(R, r, 0).plus_part()
    out = pdo_mul(L, P) - pdo_mul(P, L)
    if out.top is not None and out.top > N - 2:
        raise AssertionError(f"KdV commutator has order {out.top} > {N - 2}")
    return out


# ---------------------------------------------------------------- Miura maps

def factor_order(i: int, N: int) -> list[int]:
    """1-based potential indices of the factors of ``L_i``, left to right.

    ``L_i = (d - v_i) ... (d - v_1)(d - v_N) ... (d - v_{i+1})``; ``L_0 = L_N``.
    """
    if not 0 <= i <= N:
        raise IndexError(f"Miura map index {i} outside 0..{N}")
    if i == 0:
        i = N
    return list(range(i, 0, -1)) + list(range(N, i, -1))


def _factor(v) -> PDO:
    return PDO({1: _one_like(v), 0: -v})


def miura_map(v: Sequence, i: int) -> PDO:
    """The ordered product of first-order factors ``d - v_k``."""
    N = len(v)
    out = None
    for k in factor_order(i, N):
        f = _factor(v[k - 1])
        out = f if out is None else pdo_mul(out, f)
    return out


def miura_tangent(v: Sequence, X: Sequence, i: int) -> PDO:
    """Derivative of ``L_i`` along ``v -> v + t X`` by the Leibniz sum over factors."""
    N = len(v)
    order = factor_order(i, N)
    factors = [_factor(v[k - 1]) for k in order]
    prefix = [PDO({0: ONE})]
    for f in factors:
        prefix.append(pdo_mul(prefix[-1], f))
    suffix = [PDO({0: ONE})]
    for f in reversed(factors):
        suffix.append(pdo_mul(f, suffix[-1]))
    suffix.reverse()
    total = PDO()
    for p, k in enumerate(order):
        if X[k - 1].is_zero():
            continue
        mid = pdo_mul(prefix[p], PDO({0: -X[k - 1]}))
        total = total + pdo_mul(mid, suffix[p + 1])
    return total


def miura_tangent_dual(v: Sequence, X: Sequence, i: int) -> PDO:
    """Same derivative read off the infinitesimal part of the map at ``v + eps X``."""
    jets = [DualFn(a, b) for a, b in zip(v, X)]
    L = miura_map(jets, i)
    return PDO({o: c.tangent for o, c in L.terms.items()})


def tangent_coefficients(Z: PDO, N: int) -> list:
    """``[Z_0, ..., Z_{N-2}]``; raises if Z has order N - 1 or more."""
    if Z.top is not None and Z.top > N - 2:
        raise AssertionError(f"tangent has order {Z.top} > {N - 2}")
    return [Z.coeff(k) for k in range(N - 1)]


def first_coefficient(v: Vec, X: Vec, i: int) -> RatFn:
    """Closed form of the order ``N-2`` coefficient of the Miura tangent.

    ``-(sum_k v_k X_k + sum_{k<=i} (i-k) X_k' + sum_{k>i} (i+N-k) X_k')``
    with 1-based k; i = 0 is read as i = N. The Leibniz sum adds
    ``(sum v)(sum X)`` to this, so the formula needs trace-zero v or X.
    """
    N = len(v)
    if i == 0:
        i = N
    total = ZERO
    for k in range(1, N + 1):
        total = total + v[k - 1] * X[k - 1]
        w = i - k if k <= i else i + N - k
        if w:
            total = total + X[k - 1].derivative() * w
    return -total


# ---------------------------------------------------------------- kernels of tangent maps

@dataclass(frozen=True)
class KernelCase:
    """Which Miura maps are assumed to have vanishing order-(N-2) tangent coefficient.

    ``kind`` is "full" (i = 1..2n), "skip-pair" (all i except j and N-j) or
    "skip-center" (all i except n and n+1). Indices run over 1..N with
    ``L_N = L_0``.
    """

    kind: str
    j: int | None = None

    def indices(self, n: int) -> list[int]:
        N = 2 * n + 1
        if self.kind == "full":
            return list(range(1, 2 * n + 1))
        if self.kind == "skip-pair":
            if self.j is None or not 1 <= self.j <= n - 1:
                raise ValueError("skip-pair needs 1 <= j <= n-1")
            return [i for i in range(1, N + 1) if i not in (self.j, N - self.j)]
        if self.kind == "skip-center":
            return [i for i in range(1, N + 1) if i not in (n, n + 1)]
        raise ValueError(f"unknown kernel case {self.kind!r}")

    def conclusions(self, v: Vec, X: Vec) -> list[RatFn]:
        """Residuals of the implied relations; all vanish when the conclusion holds."""
        N = len(v)
        n = (N - 1) // 2

        def V(k):
            return v[k - 1]

        def Xk(k):
            return X[k - 1]

        def dX(k):
            return X[k - 1].derivative()

        out = []
        if self.kind == "full":
            rhs = ZERO
            for k in range(2, 2 * n + 1):
                rhs = rhs + V(k) * Xk(k)
            out.append(dX(1) - V(1) * Xk(1) * 2 - rhs)
            out.extend(dX(i) for i in range(2, 2 * n + 1))
        elif self.kind == "skip-pair":
            j = self.j
            rhs = ZERO
            for k in range(1, n + 1):
                if k not in (j, j + 1):
                    rhs = rhs + V(k) * Xk(k)
            out.append(dX(j) + V(j) * Xk(j) + V(j + 1) * Xk(j + 1) + rhs)
            out.append(dX(j) + dX(j + 1))
            skip = {j, j + 1, N - j, N + 1 - j}
            out.extend(dX(i) for i in range(1, N + 1) if i not in skip)
        else:
            rhs = ZERO
            for k in range(1, n):
                rhs = rhs + V(k) * Xk(k)
            out.append(dX(n) + V(n) * Xk(n) + rhs)
            out.extend(dX(i) for i in range(1, N + 1) if i not in (n, n + 2))
        return out


def hypothesis_holds(v: Vec, X: Vec, case: KernelCase) -> bool:
    """Whether every assumed order-(N-2) tangent coefficient vanishes (Leibniz sum)."""
    N = len(v)
    n = (N - 1) // 2
    for i in case.indices(n):
        Z = miura_tangent(v, X, i)
        if not Z.coeff(N - 2).is_zero():
            return False
    return True


@dataclass(frozen=True)
class KernelReport:
    case: KernelCase
    family_size: int
    kernel: tuple  # A^(2) tangents satisfying the hypothesis
    failures: tuple  # kernel vectors whose conclusion residuals are nonzero

    @property
    def ok(self) -> bool:
        return not self.failures


def a2_tangent_family(n: int, functions: Sequence[RatFn]) -> list[Vec]:
    """Tangents ``phi (e_p - e_{N+1-p})`` for p = 1..n and phi in ``functions``."""
    N = 2 * n + 1
    out = []
    for p in range(1, n + 1):
        for phi in functions:
            X = [ZERO] * N
            X[p - 1] = phi
            X[N - p] = -phi
            out.append(tuple(X))
    return out


def kernel_lemma_check(case: KernelCase, v: Vec, functions: Sequence[RatFn], extra: Sequence[Vec] = ()) -> KernelReport:
    """Check a kernel lemma on the span of a finite tangent family.

    The family is ``a2_tangent_family(n, functions)`` plus ``extra``. The
    hypothesis is linear in the span coefficients, so its solution space is
    an exact nullspace over Q; each basis vector is checked against the
    hypothesis again through the Leibniz sum and then against the
    conclusions.
    """
    N = len(v)
    n = (N - 1) // 2
    family = a2_tangent_family(n, functions) + [tuple(e) for e in extra]
    columns = [[first_coefficient(v, X, i) for i in case.indices(n)] for X in family]
    rows = linear_rows(columns)
    kernel = []
    failures = []
    for coeffs in nullspace(rows, len(family)):
        X = tuple(ZERO for _ in range(N))
        for q, F in zip(coeffs, family):
            if q:
                X = tuple(a + b * q for a, b in zip(X, F))
        if not hypothesis_holds(v, X, case):
            raise AssertionError("closed-form first coefficient disagrees with the Leibniz sum")
        kernel.append(X)
        if any(not r.is_zero() for r in case.conclusions(v, X)):
            failures.append(X)
    return KernelReport(case, len(family), tuple(kernel), tuple(failures))
