import random
from fractions import Fraction

import pytest

from conftest import random_a2_potential, random_ratfn
from twisted_mkdv.errors import DomainError, NotASolutionError
from twisted_mkdv.exact import Poly, RatFn, log_deriv
from twisted_mkdv.generation import PolyTuple, degree_increasing_sequences, generate
from twisted_mkdv.loop import AlgebraDims, h_vector, is_zero_vec, vec, vscale, vzero
from twisted_mkdv.miura import (
    MiuraOper,
    conjugated_trivial,
    dressing_exponent,
    family_derivative,
    family_element,
    family_oper,
    last_step_closed_form,
    oper_from_tuple,
    potential_entries,
    proportionality,
    riccati_deform,
    riccati_residual,
    tangent_space_check,
)

F = Fraction
X = Poly.x()
CELLS = [J for J in degree_increasing_sequences(2, 3) if J]


def params(J):
    return tuple(F(3 * k - 2, k + 2) for k in range(len(J)))


def test_oper_rejects_broken_symmetry():
    with pytest.raises(DomainError):
        MiuraOper(AlgebraDims(2), vec([1, -1, 0, 0, 0]))
    MiuraOper(AlgebraDims(2), vec([1, 0, 0, 0, -1]))
    with pytest.raises(ValueError):
        MiuraOper(AlgebraDims(2), vec([0, 0, 0]))


def test_trivial_oper():
    L = MiuraOper.trivial(2)
    assert L.v == vzero(5)
    assert oper_from_tuple(PolyTuple.empty(2)) == L


@pytest.mark.parametrize("J", CELLS)
def test_oper_from_tuple_matches_entrywise_formula(J):
    y = generate(J, params(J), 2).y
    assert oper_from_tuple(y).v == potential_entries(y)


def test_oper_of_single_step_tuple():
    y = generate((2,), (F(4),), 2).y
    L = oper_from_tuple(y)
    assert L.v == vscale(h_vector(2, 2), -log_deriv(X + 4))


@pytest.mark.parametrize("J", CELLS)
def test_family_oper_is_chain_of_riccati_steps(J):
    fam = family_oper(J, params(J), 2)
    assert fam.oper == oper_from_tuple(fam.y)
    L = MiuraOper.trivial(2)
    for j, g in zip(fam.J, fam.g):
        assert riccati_residual(L, j, g).is_zero()
        L = riccati_deform(L, j, g)
    assert L == fam.oper


def test_riccati_deform_rejects_non_solution():
    L = MiuraOper.trivial(2)
    with pytest.raises(NotASolutionError):
        riccati_deform(L, 0, RatFn.x())
    # 1/(x + c) solves g' + g^2 = 0 on the trivial oper
    riccati_deform(L, 0, RatFn(Poly.one(), X + 7))


@pytest.mark.parametrize("J", [(2,), (1, 2), (2, 1, 0)])
def test_family_element_reproduces_oper(J):
    fam = family_oper(J, params(J), 2)
    op = conjugated_trivial(fam, 4)
    assert op.same_as(fam.oper.operator(), -4)
    W = dressing_exponent(fam, -5)
    assert family_element(fam, -5).same_as(-W)
    assert W.top == -1


def test_derivative_of_single_step():
    c = F(5, 2)
    d = family_derivative((1,), (c,), 1, 2)
    assert d == vscale(h_vector(2, 1), RatFn(Poly.one(), (X + c) ** 2))
    with pytest.raises(IndexError):
        family_derivative((1,), (c,), 2, 2)


@pytest.mark.parametrize("J", CELLS)
def test_last_parameter_derivative_closed_form(J):
    c = params(J)
    fam = family_oper(J, c, 2)
    d = family_derivative(J, c, len(J), 2)
    base, eps = last_step_closed_form(fam)
    assert tangent_space_check(d)
    q = proportionality(d, base)
    assert q == -eps
    assert q.denominator == 1 and q > 0


@pytest.mark.parametrize("J", [(2, 1), (0, 1, 2)])
def test_all_parameter_derivatives_lie_in_tangent_space(J):
    c = params(J)
    for i in range(1, len(J) + 1):
        d = family_derivative(J, c, i, 2)
        assert tangent_space_check(d)
        assert not is_zero_vec(d)


def test_proportionality():
    rng = random.Random(2)
    v = random_a2_potential(rng, 2)
    assert proportionality(vscale(v, F(3, 4)), v) == F(3, 4)
    w = list(v)
    w[0] = w[0] + random_ratfn(rng) + 1
    assert proportionality(tuple(w), v) is None
    assert proportionality(vzero(5), v) == 0
