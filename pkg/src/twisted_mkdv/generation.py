"""Critical points of the A^(2)_2n master functions and their Wronskian generation.

A tuple ``y = (y_0, ..., y_n)`` of monic polynomials represents a critical
point through its roots. New tuples are produced one direction at a time by
solving ``Wr(y~_j, y_j) = eps * R_j`` where ``R_j = prod_{i != j} y_i^(-a_ij)``
is fixed by the Cartan matrix (``y_1^2`` for j = 0, ``y_{j-1} y_{j+1}`` in
the middle, ``y_{n-2} y_n^2`` for j = n-1 and ``y_{n-1}`` for j = n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from .errors import DegreeError, InconsistentSystemError, NotFertileError, NotGenericError, SingularityError
from .exact import Poly, gcd, solve, wronskian
from .exact.dual import value_of
from .loop import cartan_matrix


# ---------------------------------------------------------------- degrees

def degree_transform(k: Sequence[int], i: int) -> tuple[int, ...]:
    """Shifted Weyl reflection acting on the i-th degree.

    The result may contain a negative entry; callers decide whether that
    step is admissible.
    """
    n = len(k) - 1
    if not 0 <= i <= n:
        raise IndexError(f"direction {i} outside 0..{n}")
    a = cartan_matrix(n)
    k = list(k)
    k[i] = sum(-a[l][i] * k[l] for l in range(n + 1) if l != i) + 1 - k[i]
    return tuple(k)


def is_degree_increasing(J: Sequence[int], n: int) -> tuple[bool, tuple[int, ...]]:
    """Iterate the degree transforms from zero; returns (flag, k^J).

    k^J is the vector reached after the full sequence, even when some step
    fails to raise its coordinate.
    """
    k = (0,) * (n + 1)
    ok = True
    for j in J:
        new = degree_transform(k, j)
        if new[j] <= k[j]:
            ok = False
        k = new
    return ok, k


def degree_increasing_sequences(n: int, max_len: int) -> list[tuple[int, ...]]:
    """All degree-increasing J with ``len(J) <= max_len``, shortest first."""
    out = []
    for m in range(max_len + 1):
        for J in iproduct(range(n + 1), repeat=m):
            if is_degree_increasing(J, n)[0]:
                out.append(J)
    return out


# ---------------------------------------------------------------- tuples

def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, (list, tuple)):
        return Poly(p)
    return Poly.const(p)


@dataclass(frozen=True)
class PolyTuple:
    y: tuple

    def __post_init__(self):
        ys = tuple(_as_poly(p) for p in self.y)
        if len(ys) < 3:
            raise ValueError("a tuple needs n + 1 >= 3 polynomials")
        object.__setattr__(self, "y", ys)

    @classmethod
    def empty(cls, n: int) -> "PolyTuple":
        return cls((Poly.one(),) * (n + 1))

    @property
    def n(self) -> int:
        return len(self.y) - 1

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.y)

    def is_monic(self) -> bool:
        return all(p.is_monic() for p in self.y)

    def replace(self, j: int, p: Poly) -> "PolyTuple":
        ys = list(self.y)
        ys[j] = p
        return PolyTuple(tuple(ys))

    def value_part(self) -> "PolyTuple":
        return PolyTuple(tuple(p.value_part() for p in self.y))

    def eps_part(self) -> tuple:
        return tuple(p.eps_part() for p in self.y)

    def __getitem__(self, j):
        return self.y[j]

    def __len__(self):
        return len(self.y)


def right_side(y: PolyTuple, j: int) -> Poly:
    """``R_j = prod_{i != j} y_i^(-a_ij)``."""
    a = cartan_matrix(y.n)
    out = Poly.one()
    for i in range(y.n + 1):
        if i != j and a[i][j]:
            out = out * y[i] ** (-a[i][j])
    return out


def is_generic(y: PolyTuple) -> bool:
    """Squarefree entries and coprime neighbours."""
    for p in y.y:
        if p.degree > 0 and gcd(p, p.derivative()).degree > 0:
            return False
    for i in range(y.n):
        if gcd(y[i], y[i + 1]).degree > 0:
            return False
    return True


def require_generic(y: PolyTuple) -> None:
    for i, p in enumerate(y.y):
        if p.is_zero():
            raise NotGenericError(f"y_{i} is the zero polynomial")
        if p.degree > 0 and gcd(p, p.derivative()).degree > 0:
            raise NotGenericError(f"y_{i} = {p} has a multiple root")
    for i in range(y.n):
        if gcd(y[i], y[i + 1]).degree > 0:
            raise NotGenericError(f"y_{i} and y_{i + 1} share a root")


# ---------------------------------------------------------------- Wronskian solving

@dataclass(frozen=True)
class FertilityStep:
    """``Wr(poly, y_j) = eps * R_j`` with poly monic of degree ``degree``."""

    direction: int
    poly: Poly
    eps: Fraction
    degree: int


def _solve_wronskian(y: PolyTuple, j: int, target_deg: int) -> FertilityStep:
    yj = y[j]
    R = right_side(y, j)
    kj = yj.degree
    # unknown coefficients of x^i for i < target_deg except x^kj, then eps
    powers = [i for i in range(target_deg) if i != kj]
    cols = [wronskian(Poly.monomial(i), yj) for i in powers] + [-R]
    rhs_poly = -wronskian(Poly.monomial(target_deg), yj)
    rows = max([p.degree for p in cols] + [rhs_poly.degree, 0]) + 1
    matrix = [[p.coeff(r) for p in cols] for r in range(rows)]
    rhs = [rhs_poly.coeff(r) for r in range(rows)]
    try:
        sol = solve(matrix, rhs)
    except InconsistentSystemError as exc:
        raise NotFertileError(f"no degree-{target_deg} Wronskian solution in direction {j}") from exc
    coeffs = [Fraction(0)] * (target_deg + 1)
    for i, a in zip(powers, sol):
        coeffs[i] = a
    coeffs[target_deg] = Fraction(1)
    eps = sol[-1]
    if value_of(eps) == 0:
        raise NotFertileError(f"Wronskian in direction {j} degenerates to zero")
    return FertilityStep(j, Poly(coeffs), value_of(eps), target_deg)


def raised_degree(y: PolyTuple, j: int) -> int:
    """Degree ``deg R_j + 1 - k_j`` of the Wronskian partner of y_j."""
    return right_side(y, j).degree + 1 - y[j].degree


def fertility_solve(y: PolyTuple, j: int) -> FertilityStep:
    """The monic y_{j,0} of raised degree with zero ``x^{k_j}`` coefficient.

    Solves the linear system in the unknown coefficients together with the
    scalar eps. The reported eps equals ``k_j - deg(y_{j,0})``, so it is
    negative whenever the degree rises.
    """
    if not 0 <= j <= y.n:
        raise IndexError(f"direction {j} outside 0..{y.n}")
    target = raised_degree(y, j)
    if target <= y[j].degree:
        raise DegreeError(
            f"direction {j} does not raise the degree: {y[j].degree} -> {target}"
        )
    return _solve_wronskian(y, j, target)


def fertility_certificate(y: PolyTuple, j: int) -> FertilityStep:
    """A Wronskian partner in direction j whether or not the degree rises."""
    target = raised_degree(y, j)
    if target < 0 or target == y[j].degree:
        raise NotFertileError(f"no polynomial partner of degree {target} in direction {j}")
    return _solve_wronskian(y, j, target)


def fertility_identity(y: PolyTuple) -> list[FertilityStep]:
    """Check that a generic tuple is fertile in every direction.

    Returns the per-direction certificates; raises NotFertileError on the
    first failing direction and NotGenericError if y is not generic.
    """
    require_generic(y)
    return [fertility_certificate(y, j) for j in range(y.n + 1)]


def is_fertile(y: PolyTuple) -> bool:
    try:
        fertility_identity(y)
    except NotFertileError:
        return False
    return True


# ---------------------------------------------------------------- generation

@dataclass(frozen=True)
class Generation:
    """Result of multistep generation along J.

    ``tuples[l]`` is the tuple after l steps (``tuples[0]`` is all ones) and
    ``steps[l]`` the Wronskian solve used at step l + 1.
    """

    J: tuple
    c: tuple
    tuples: tuple
    steps: tuple

    @property
    def y(self) -> PolyTuple:
        return self.tuples[-1]

    @property
    def eps(self) -> tuple:
        return tuple(s.eps for s in self.steps)

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.y.degrees


def generate(J: Sequence[int], c: Sequence, n: int) -> Generation:
    """Multistep generation ``y[j] <- y_{j,0} + c_l * y[j]`` along J.

    Coefficients c may be rationals or dual numbers.
    """
    J = tuple(J)
    c = tuple(c)
    if len(J) != len(c):
        raise ValueError(f"J has {len(J)} steps but {len(c)} parameters were given")
    y = PolyTuple.empty(n)
    tuples = [y]
    steps = []
    for j, cl in zip(J, c):
        step = fertility_solve(y, j)
        y = y.replace(j, step.poly + y[j] * cl)
        tuples.append(y)
        steps.append(step)
    return Generation(J, c, tuple(tuples), tuple(steps))


# ---------------------------------------------------------------- master function

@dataclass(frozen=True)
class CriticalSystem:
    """Grouped positions ``u[j][i]`` with ``len(u[j]) == k_j``."""

    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(tuple(Fraction(t) for t in g) for g in self.u))

    @property
    def n(self) -> int:
        return len(self.u) - 1

    @property
    def k(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.u)


def _self_weight(n: int, j: int) -> int:
    return 2 if j == 0 else (8 if j == n else 4)


def _cross_weight(n: int, j: int) -> int:
    """Weight of the interaction between groups j and j+1."""
    return -4 if j == n - 1 else -2


@dataclass(frozen=True)
class MasterValue:
    """``Phi = sum w * ln(d)``; ``product = prod d^w``."""

    terms: tuple  # (weight, difference)
    product: Fraction


def master_value(sys: CriticalSystem) -> MasterValue:
    n = sys.n
    terms = []
    for j in range(n):
        w = _cross_weight(n, j)
        for a in sys.u[j]:
            for b in sys.u[j + 1]:
                terms.append((w, a - b))
    for j in range(n + 1):
        w = _self_weight(n, j)
        g = sys.u[j]
        for i in range(len(g)):
            for i2 in range(i + 1, len(g)):
                terms.append((w, g[i] - g[i2]))
    prod = Fraction(1)
    for w, d in terms:
        if d == 0:
            raise SingularityError("coincident interacting variables")
        prod *= d ** w
    return MasterValue(tuple(terms), prod)


def bethe_residuals(sys: CriticalSystem) -> list[Fraction]:
    """Partial derivatives of the master function, group by group."""
    n = sys.n
    out = []
    for j in range(n + 1):
        for i, t in enumerate(sys.u[j]):
            total = Fraction(0)
            for s, other in enumerate(sys.u[j]):
                if s != i:
                    total += _frac(_self_weight(n, j), t - other)
            if j > 0:
                w = _cross_weight(n, j - 1)
                for other in sys.u[j - 1]:
                    total += _frac(w, t - other)
            if j < n:
                w = _cross_weight(n, j)
                for other in sys.u[j + 1]:
                    total += _frac(w, t - other)
            out.append(total)
    return out


def _frac(w: int, d: Fraction) -> Fraction:
    if d == 0:
        raise SingularityError("coincident interacting variables")
    return Fraction(w) / d


def bethe_polynomial_residuals(y: PolyTuple) -> list[Poly]:
    """Root-free form of the critical-point equations.

    At a simple root u of y_j the j-th group equation equals
    ``(w_j/2) y_j''(u)/y_j'(u) + sum_l w_jl y_l'(u)/y_l(u)``. Clearing
    denominators gives a polynomial whose remainder modulo y_j must vanish;
    the returned list holds those remainders.
    """
    n = y.n
    out = []
    for j in range(n + 1):
        yj = y[j]
        if yj.degree == 0:
            out.append(Poly.zero())
            continue
        nbrs = [l for l in (j - 1, j + 1) if 0 <= l <= n]
        den = Poly.one()
        for l in nbrs:
            den = den * y[l]
        expr = yj.derivative().derivative() * den * Fraction(_self_weight(n, j), 2)
        for l in nbrs:
            w = _cross_weight(n, min(j, l))
            rest = Poly.one()
            for l2 in nbrs:
                if l2 != l:
                    rest = rest * y[l2]
            expr = expr + yj.derivative() * y[l].derivative() * rest * w
        out.append(expr % yj)
    return out
