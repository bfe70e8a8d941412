"""The lambda-realization of A^(1)_2n and A^(2)_2n in graded coordinates.

Every element of the loop algebra of N x N matrices (N = 2n + 1) with
Laurent-in-lambda entries is written uniquely as ``sum_j diag(b_j) Lambda^j``
where ``Lambda = sum_i e_{i+1,i} + lambda e_{1,N}``. A graded element stores
the vectors ``b_j`` keyed by the grade ``j``. Products reduce to cyclic
shifts of coordinates::

    Lambda^j diag(a) = diag(S^j a) Lambda^j,   (S^j a)_k = a_{k-j}  (indices mod N)

Vectors are tuples of RatFn, indexed from 0 internally; docstrings quote
matrix positions 1-based.

A^(2)_2n sits inside A^(1)_2n as the fixed points of the involution
``b Lambda^j -> (-1)^(j+1) (S^j rev b) Lambda^j``; it has the same Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from .errors import CenterGapError, GradeError
from .exact import ONE, ZERO, RatFn

Vec = tuple  # tuple[RatFn, ...] of length N


@dataclass(frozen=True)
class AlgebraDims:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"rank n must be an integer >= 2, got {self.n!r}")

    @property
    def N(self) -> int:
        return 2 * self.n + 1


def _as_dims(n) -> AlgebraDims:
    return n if isinstance(n, AlgebraDims) else AlgebraDims(n)


# ---------------------------------------------------------------- vectors

def _lift(c) -> RatFn:
    return c if isinstance(c, RatFn) else RatFn.const(c)


def vec(values: Iterable) -> Vec:
    return tuple(_lift(c) for c in values)


def vzero(N: int) -> Vec:
    return (ZERO,) * N


def vones(N: int) -> Vec:
    return (ONE,) * N


def unit(N: int, k: int, c=1) -> Vec:
    """``c * e_{k,k}`` with k 1-based."""
    out = [ZERO] * N
    out[k - 1] = _lift(c)
    return tuple(out)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vmul(a: Vec, b: Vec) -> Vec:
    return tuple(x * y for x, y in zip(a, b))


def vscale(a: Vec, s) -> Vec:
    return tuple(x * s for x in a)


def vderiv(a: Vec) -> Vec:
    return tuple(x.derivative() for x in a)


def vshift(a: Vec, j: int) -> Vec:
    """``(S^j a)_k = a_{k-j}`` cyclically."""
    N = len(a)
    j %= N
    if j == 0:
        return a
    return a[N - j:] + a[: N - j]


def vrev(a: Vec) -> Vec:
    return tuple(reversed(a))


def vsum(a: Vec) -> RatFn:
    total = ZERO
    for x in a:
        total = total + x
    return total


def is_zero_vec(a: Vec) -> bool:
    return all(x.is_zero() for x in a)


def comm_vec(a: Vec, i: int, b: Vec, j: int) -> Vec:
    """Coefficient of Lambda^(i+j) in ``[a Lambda^i, b Lambda^j]``."""
    return vsub(vmul(a, vshift(b, i)), vmul(b, vshift(a, j)))


def mul_vec(a: Vec, i: int, b: Vec) -> Vec:
    """Coefficient of Lambda^(i+j) in ``(a Lambda^i)(b Lambda^j)``."""
    return vmul(a, vshift(b, i))


# ---------------------------------------------------------------- grades

def grade_of_basis(m: int, k: int, l: int, n: int | AlgebraDims) -> int:
    """Principal grade of ``lambda^m e_{k,l}``: ``N m + k - l``."""
    N = _as_dims(n).N
    if not (1 <= k <= N and 1 <= l <= N):
        raise IndexError(f"matrix position ({k}, {l}) outside 1..{N}")
    return N * m + k - l


def has_center(grade: int, n: int | AlgebraDims, algebra: str = "A2") -> bool:
    """Whether the centralizer of Lambda is nontrivial at ``grade``."""
    N = _as_dims(n).N
    if algebra == "A1":
        return grade % N != 0
    if algebra == "A2":
        return grade % 2 != 0 and grade % (2 * N) != N
    raise ValueError(f"unknown algebra {algebra!r}")


def is_a2_vec(b: Vec, grade: int) -> bool:
    """Membership of ``b Lambda^grade`` in the twisted subalgebra."""
    N = len(b)
    img = vshift(vrev(b), grade)
    if grade % 2 == 0:
        img = vneg(img)
    if grade % N == 0 and not vsum(b).is_zero():
        return False
    return img == b


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class GradedElem:
    """``sum_j diag(terms[j]) Lambda^j``, exact at grades >= floor.

    ``floor=None`` means the element is known exactly (finitely many grades).
    Zero coefficient vectors are never stored.
    """

    dims: AlgebraDims
    terms: Mapping[int, Vec] = field(default_factory=dict)
    floor: int | None = None

    def __post_init__(self):
        clean = {}
        for j, b in self.terms.items():
            if len(b) != self.dims.N:
                raise ValueError(f"grade {j} vector has length {len(b)}, expected {self.dims.N}")
            if self.floor is not None and j < self.floor:
                continue
            b = vec(b)
            if not is_zero_vec(b):
                clean[j] = b
        object.__setattr__(self, "terms", clean)

    @property
    def N(self) -> int:
        return self.dims.N

    def grade(self, j: int) -> Vec:
        return self.terms.get(j, vzero(self.N))

    @property
    def top(self) -> int | None:
        return max(self.terms) if self.terms else None

    @property
    def bottom(self) -> int | None:
        return min(self.terms) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, floor: int) -> "GradedElem":
        f = floor if self.floor is None else max(floor, self.floor)
        return GradedElem(self.dims, {j: b for j, b in self.terms.items() if j >= f}, f)

    def part(self, lo: int | None = None, hi: int | None = None) -> "GradedElem":
        """Projection onto grades in ``[lo, hi]`` (an exact element)."""
        return GradedElem(
            self.dims,
            {j: b for j, b in self.terms.items() if (lo is None or j >= lo) and (hi is None or j <= hi)},
        )

    def __add__(self, other: "GradedElem") -> "GradedElem":
        out = dict(self.terms)
        for j, b in other.terms.items():
            out[j] = vadd(out[j], b) if j in out else b
        return GradedElem(self.dims, out, _max_floor(self.floor, other.floor))

    def __neg__(self) -> "GradedElem":
        return GradedElem(self.dims, {j: vneg(b) for j, b in self.terms.items()}, self.floor)

    def __sub__(self, other: "GradedElem") -> "GradedElem":
        return self + (-other)

    def scale(self, s) -> "GradedElem":
        return GradedElem(self.dims, {j: vscale(b, s) for j, b in self.terms.items()}, self.floor)

    def derivative(self) -> "GradedElem":
        return GradedElem(self.dims, {j: vderiv(b) for j, b in self.terms.items()}, self.floor)

    def same_as(self, other: "GradedElem", floor: int | None = None) -> bool:
        """Equality of all grades >= floor (default: the common window)."""
        f = _max_floor(self.floor, other.floor)
        if floor is not None:
            f = floor if f is None else max(f, floor)
        keys = set(self.terms) | set(other.terms)
        return all(self.grade(j) == other.grade(j) for j in keys if f is None or j >= f)


def _max_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _product_floor(X: GradedElem, Y: GradedElem, floor: int | None) -> int | None:
    cands = [floor]
    if X.floor is not None and Y.top is not None:
        cands.append(X.floor + Y.top)
    if Y.floor is not None and X.top is not None:
        cands.append(Y.floor + X.top)
    cands = [c for c in cands if c is not None]
    return max(cands) if cands else None


def zero(n) -> GradedElem:
    return GradedElem(_as_dims(n))


def diag(n, b: Sequence, grade: int = 0) -> GradedElem:
    d = _as_dims(n)
    return GradedElem(d, {grade: vec(b)})


def lambda_power(r: int, n, algebra: str = "A2") -> GradedElem:
    """``Lambda^r`` as a center element of the chosen algebra.

    For A^(2)_2n, r must be odd and not congruent to 2n+1 mod 4n+2; for
    A^(1)_2n, r must not be a multiple of 2n+1. ``algebra=None`` skips the
    check and returns the plain matrix power.
    """
    d = _as_dims(n)
    if algebra is not None and not has_center(r, d, algebra):
        raise CenterGapError(f"Lambda^{r} is not a center element of {algebra} with n={d.n}")
    return GradedElem(d, {r: vones(d.N)})


def commutator(X: GradedElem, Y: GradedElem, floor: int | None = None) -> GradedElem:
    """``[X, Y]``; grades add, window shrinks to what both inputs determine."""
    f = _product_floor(X, Y, floor)
    out: dict[int, Vec] = {}
    for i, a in X.terms.items():
        for j, b in Y.terms.items():
            g = i + j
            if f is not None and g < f:
                continue
            c = comm_vec(a, i, b, j)
            out[g] = vadd(out[g], c) if g in out else c
    return GradedElem(X.dims, out, f)


def product(X: GradedElem, Y: GradedElem, floor: int | None = None) -> GradedElem:
    """Associative matrix product ``X Y`` in graded coordinates."""
    f = _product_floor(X, Y, floor)
    out: dict[int, Vec] = {}
    for i, a in X.terms.items():
        for j, b in Y.terms.items():
            g = i + j
            if f is not None and g < f:
                continue
            c = mul_vec(a, i, b)
            out[g] = vadd(out[g], c) if g in out else c
    return GradedElem(X.dims, out, f)


def identity(n) -> GradedElem:
    d = _as_dims(n)
    return GradedElem(d, {0: vones(d.N)})


def exp_series(X: GradedElem, floor: int) -> GradedElem:
    """Matrix exponential of a strictly negative-grade element, exact >= floor."""
    _require_negative(X)
    result = identity(X.dims).truncate(floor)
    term = identity(X.dims)
    k = 1
    while True:
        term = product(term, X, floor).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
        k += 1
    return GradedElem(X.dims, result.terms, floor)


def log_series(M: GradedElem, floor: int) -> GradedElem:
    """Logarithm of ``1 + (strictly negative grades)``, exact >= floor."""
    Y = M - identity(M.dims)
    Y = GradedElem(M.dims, Y.terms)
    _require_negative(Y)
    result = GradedElem(M.dims, {}, floor)
    power = identity(M.dims)
    k = 1
    while True:
        power = product(power, Y, floor)
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
        k += 1
    return GradedElem(M.dims, result.terms, floor)


def _require_negative(U: GradedElem) -> None:
    if U.terms and max(U.terms) >= 0:
        raise GradeError(f"element must have only negative grades, found grade {max(U.terms)}")


# ---------------------------------------------------------------- operators

@dataclass(frozen=True)
class LoopOperator:
    """``has_d * d/dx + body``."""

    body: GradedElem
    has_d: bool = True

    @property
    def dims(self) -> AlgebraDims:
        return self.body.dims

    def same_as(self, other: "LoopOperator", floor: int | None = None) -> bool:
        return self.has_d == other.has_d and self.body.same_as(other.body, floor)


def miura_operator(n, v: Sequence) -> LoopOperator:
    """``d + Lambda + diag(v)``."""
    d = _as_dims(n)
    return LoopOperator(GradedElem(d, {1: vones(d.N), 0: vec(v)}))


def _ad_series(U: Mapping[int, Vec], X: Mapping[int, Vec], has_d: bool, floor: int) -> dict[int, Vec]:
    """Grades >= floor of ``exp(ad U)(has_d * d + X)`` minus the ``d`` term.

    ``P[k][g]`` is grade g of ``ad_U^k`` applied to the operator. Since U
    has only negative grades, ``P[k][g]`` only needs ``P[k-1]`` at grades
    above g, so grades are filled from the top down and each nested
    commutator is formed once.
    """
    if not X and not has_d:
        return {}
    top = max(X) if X else 0
    P: list[dict[int, Vec]] = [dict(X)]
    result: dict[int, Vec] = {g: b for g, b in X.items() if g >= floor}
    u_items = sorted(U.items(), reverse=True)
    for g in range(top - 1, floor - 1, -1):
        k = 1
        while top - k >= g:
            if len(P) <= k:
                P.append({})
            acc = None
            for i, u in u_items:
                src = g - i
                b = P[k - 1].get(src)
                if b is None:
                    continue
                c = comm_vec(u, i, b, src)
                acc = c if acc is None else vadd(acc, c)
            if k == 1 and has_d and g in U:
                c = vneg(vderiv(U[g]))
                acc = c if acc is None else vadd(acc, c)
            if acc is not None and not is_zero_vec(acc):
                P[k][g] = acc
                c = vscale(acc, Fraction(1, factorial(k)))
                result[g] = vadd(result[g], c) if g in result else c
            k += 1
    return result


def ad_exp(U: GradedElem, L: LoopOperator, depth: int) -> LoopOperator:
    """``exp(ad U)(L) = L + [U, L] + [U, [U, L]]/2! + ...`` for grades >= -depth.

    The derivation acts by ``[U, d] = -U'``. U must have only negative
    grades, so each retained grade receives finitely many contributions and
    the result is exact there.
    """
    _require_negative(U)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    floor = -depth
    terms = _ad_series(U.terms, L.body.terms, L.has_d, floor)
    return LoopOperator(GradedElem(U.dims, terms, floor), L.has_d)


def conjugate(U: GradedElem, X: GradedElem, floor: int) -> GradedElem:
    """``exp(ad U)(X)`` for an element without derivation, grades >= floor."""
    _require_negative(U)
    return GradedElem(X.dims, _ad_series(U.terms, X.terms, False, floor), floor)


# ---------------------------------------------------------------- ad Lambda

def invert_ad_lambda(X: Vec, grade: int) -> tuple[Vec, RatFn]:
    """Split ``X Lambda^grade = [Lambda, Y Lambda^(grade-1)] + c Lambda^grade``.

    ``[Lambda, Y Lambda^(j-1)] = (S Y - Y) Lambda^j``, so the image of
    ad Lambda is the sum-zero vectors and ``c = sum(X)/N``. Y is returned
    in the gauge ``sum(Y) = 0``. At grades that are multiples of N there is
    no center and c must vanish.
    """
    N = len(X)
    c = vsum(X) / N
    if grade % N == 0 and not c.is_zero():
        raise GradeError(f"trace-nonzero input at grade {grade} where no center exists")
    Z = [x - c for x in X]
    # Y_{k-1} - Y_k = Z_k  =>  Y_k = Y_0 - (Z_1 + ... + Z_k)
    partial = [ZERO] * N
    run = ZERO
    for k in range(1, N):
        run = run + Z[k]
        partial[k] = -run
    y0 = -vsum(tuple(partial)) / N
    Y = tuple(y0 + p for p in partial)
    return Y, c


# ---------------------------------------------------------------- generators

def cartan_matrix(n: int) -> list[list[int]]:
    """Cartan matrix of A^(2)_2n, ``a[i][j]`` with i, j in 0..n."""
    a = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        a[i][i] = 2
    for i in range(n):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    a[1][0] = -2
    a[n][n - 1] = -2
    return a


def e_vector(n, j: int) -> Vec:
    """Diagonal coordinates of the generator e_j (grade 1)."""
    d = _as_dims(n)
    N, nn = d.N, d.n
    if j == 0:
        return unit(N, 1)
    if 1 <= j <= nn - 1:
        return vadd(unit(N, j + 1), unit(N, N + 1 - j))
    if j == nn:
        return vadd(unit(N, nn + 1), unit(N, nn + 2))
    raise IndexError(f"direction {j} outside 0..{nn}")


def f_vector(n, j: int) -> Vec:
    """Diagonal coordinates of the generator f_j (grade -1); f_n keeps its factor 2."""
    d = _as_dims(n)
    N, nn = d.N, d.n
    if j == 0:
        return unit(N, N)
    if 1 <= j <= nn - 1:
        return vadd(unit(N, j), unit(N, N - j))
    if j == nn:
        return vadd(unit(N, nn, 2), unit(N, nn + 1, 2))
    raise IndexError(f"direction {j} outside 0..{nn}")


def h_vector(n, j: int) -> Vec:
    """Diagonal coordinates of the coroot h_j (grade 0)."""
    d = _as_dims(n)
    N, nn = d.N, d.n
    if j == 0:
        return vsub(unit(N, 1), unit(N, N))
    if 1 <= j <= nn - 1:
        return vadd(vsub(unit(N, j + 1), unit(N, j)), vsub(unit(N, N + 1 - j), unit(N, N - j)))
    if j == nn:
        return vsub(unit(N, nn + 2, 2), unit(N, nn, 2))
    raise IndexError(f"direction {j} outside 0..{nn}")


def alpha_pairing(v: Vec, j: int, n=None) -> RatFn:
    """``<alpha_j, V>`` for diagonal V, defined by ``[V, f_j] = -<alpha_j, V> f_j``."""
    N = len(v)
    if n is None:
        n = (N - 1) // 2
    f = f_vector(n, j)
    c = comm_vec(vec(v), 0, f, -1)
    k = next(i for i, x in enumerate(f) if not x.is_zero())
    return -(c[k] / f[k])


def a2_check(v: Sequence) -> bool:
    """Whether a grade-0 diagonal lies in the A^(2)_2n Cartan: trace zero and
    ``v_j + v_{2n+2-j} = 0`` (so the middle entry vanishes)."""
    v = vec(v)
    N = len(v)
    if not vsum(v).is_zero():
        return False
    return all((v[j] + v[N - 1 - j]).is_zero() for j in range(N))


def a2_project(v: Sequence) -> Vec:
    """Orthogonal projection of a diagonal onto the A^(2)_2n Cartan."""
    v = vec(v)
    N = len(v)
    return tuple((v[j] - v[N - 1 - j]) / 2 for j in range(N))


def operator_from_fn(n, fn: Callable[[int], Vec], grades: Iterable[int]) -> GradedElem:
    d = _as_dims(n)
    return GradedElem(d, {g: fn(g) for g in grades})
