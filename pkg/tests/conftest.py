"""Shared hypothesis strategies and random generators for exact objects."""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

from twisted_mkdv.exact import Poly, RatFn
from twisted_mkdv.loop import AlgebraDims, GradedElem

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rats = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small_rats, min_size=0, max_size=4).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@st.composite
def ratfns(draw):
    num = draw(polys)
    den = draw(nonzero_polys)
    return RatFn(num, den)


def random_rat(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 5))


def random_poly(rng: random.Random, deg: int = 2) -> Poly:
    return Poly([random_rat(rng) for _ in range(deg + 1)])


def random_ratfn(rng: random.Random) -> RatFn:
    """A small rational function with a simple pole at a random rational point."""
    num = random_poly(rng, rng.randint(0, 2))
    pole = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    return RatFn(num, Poly([-pole, 1])) if rng.random() < 0.5 else RatFn(num)


def random_vec(rng: random.Random, N: int) -> tuple:
    return tuple(random_ratfn(rng) for _ in range(N))


def random_a2_potential(rng: random.Random, n: int) -> tuple:
    """Random ``v`` with ``v_j + v_{N+1-j} = 0`` (middle entry zero)."""
    half = [random_ratfn(rng) for _ in range(n)]
    return tuple(half + [RatFn.const(0)] + [-h for h in reversed(half)])


def random_graded(rng: random.Random, n: int, grades, const: bool = True) -> GradedElem:
    d = AlgebraDims(n)
    terms = {}
    for g in grades:
        if const:
            terms[g] = tuple(RatFn.const(random_rat(rng)) for _ in range(d.N))
        else:
            terms[g] = random_vec(rng, d.N)
    return GradedElem(d, terms)


# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
