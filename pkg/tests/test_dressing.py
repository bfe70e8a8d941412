import random
from fractions import Fraction

import pytest

from conftest import random_a2_potential
from twisted_mkdv.dressing import (
    a1_vs_a2_flow,
    canonical_form,
    check_canonical,
    commutator_flow,
    difference_pattern,
    dress,
    flow_forms_agree,
    mkdv_vector,
    phi_element,
    solve_combination,
    verify_tangency,
    verify_tangency_many,
)
from twisted_mkdv.errors import CenterGapError, DepthError, NotGenericError
from twisted_mkdv.exact import RatFn
from twisted_mkdv.loop import AlgebraDims, is_a2_vec, is_zero_vec, vderiv, vneg, vones, vscale, vzero
from twisted_mkdv.miura import MiuraOper, family_derivative, family_oper, tangent_space_check

F = Fraction


def random_oper(seed, n=2):
    rng = random.Random(seed)
    return MiuraOper(AlgebraDims(n), random_a2_potential(rng, n))


def x_gauge(grade):
    return RatFn.x() * grade + 1


# ---------------------------------------------------------------- canonical form

@pytest.mark.parametrize("seed", [1, 2])
def test_dressing_reaches_canonical_form(seed):
    L = random_oper(seed)
    res = dress(L, 8)
    assert check_canonical(L, res)
    assert res.U.top == -1 and res.U.bottom >= -8
    for g, b in res.U.terms.items():
        assert is_a2_vec(b, g)


def test_central_parts_only_at_twisted_center_grades():
    L = random_oper(3)
    res = dress(L, 12)
    assert set(res.H) <= {-1, -3, -7, -9, -11}
    assert -5 not in res.H


def test_canonical_form_of_generated_oper():
    fam = family_oper((2, 1), (F(0), F(5)), 2)
    res = dress(fam.oper, 6)
    out = canonical_form(fam.oper, res)
    for g in range(-1, -6, -1):
        b = out.body.grade(g)
        assert is_zero_vec(b) or b == vscale(vones(5), b[0])


def test_gauge_changes_dressing_but_not_flow():
    L = random_oper(4)
    assert not dress(L, 6).U.same_as(dress(L, 6, gauge=x_gauge).U)
    for r in (1, 3, 7):
        assert mkdv_vector(L, r) == mkdv_vector(L, r, gauge=x_gauge)


def test_dress_rejects_bad_depth():
    with pytest.raises(ValueError):
        dress(random_oper(1), 0)


# ---------------------------------------------------------------- phi and flows

def test_phi_element_shape():
    L = random_oper(5)
    phi = phi_element(L, 3)
    assert phi.top == 3 and phi.grade(3) == vones(5)
    for g, b in phi.terms.items():
        assert is_a2_vec(b, g)


def test_phi_requires_admissible_index_and_depth():
    L = random_oper(5)
    with pytest.raises(CenterGapError):
        phi_element(L, 5)
    with pytest.raises(CenterGapError):
        mkdv_vector(L, 2)
    with pytest.raises(DepthError):
        phi_element(L, 7, dress(L, 3))


def test_first_flow_is_translation():
    L = random_oper(6)
    assert mkdv_vector(L, 1) == vneg(vderiv(L.v))


@pytest.mark.parametrize("r", [1, 3, 7])
def test_flow_forms_and_tangent_space(r):
    L = random_oper(7)
    assert flow_forms_agree(L, r)
    c = commutator_flow(L, r)
    assert set(c.terms) <= {0}
    assert tangent_space_check(mkdv_vector(L, r))


@pytest.mark.parametrize("r", [1, 3])
def test_a1_and_a2_flows_coincide(r):
    assert a1_vs_a2_flow(random_oper(8), r)


def test_flow_in_rank_three():
    L = random_oper(9, n=3)
    assert flow_forms_agree(L, 1) and flow_forms_agree(L, 3)
    assert mkdv_vector(L, 1) == vneg(vderiv(L.v))


# ---------------------------------------------------------------- tangency

def test_solve_combination():
    rng = random.Random(1)
    a, b = random_a2_potential(rng, 2), random_a2_potential(rng, 2)
    target = tuple(x * 3 - y * F(1, 2) for x, y in zip(a, b))
    assert solve_combination(target, [a, b]) == (F(3), F(-1, 2))
    assert solve_combination(a, [b]) is None


@pytest.mark.parametrize("j", [0, 1, 2])
def test_first_flow_at_one_step(j):
    rep = verify_tangency((j,), (F(7, 3),), 1, 2)
    assert rep.ok and rep.gamma == (F(-1),)
    assert rep.flow == vneg(family_derivative((j,), (F(7, 3),), 1, 2))


def test_higher_flows_vanish_at_one_step():
    for rep in verify_tangency_many((2,), (F(-4, 5),), [3, 7, 9], 2):
        assert rep.ok and rep.flow_is_zero


def test_two_step_tangency():
    reps = verify_tangency_many((2, 1), (F(2), F(3)), [1, 3], 2)
    assert all(r.ok for r in reps)
    assert reps[0].gamma[1] != 0


def test_tangency_requires_generic_tuple():
    # c = 0 for J = (0, 1) gives y0 = x, y1 = x^2 sharing the root 0
    with pytest.raises(NotGenericError):
        verify_tangency((0, 1), (F(0), F(0)), 1, 2)


# ---------------------------------------------------------------- structural difference

@pytest.mark.parametrize("J", [(2,), (1,), (0,), (2, 1), (1, 2), (2, 1, 0), (1, 0, 1)])
def test_last_derivative_has_difference_pattern(J):
    c = tuple(F(k + 3, 2) for k in range(len(J)))
    d = family_derivative(J, c, len(J), 2)
    assert difference_pattern(d, J[-1], 2)


def test_difference_pattern_rejects_generic_tangent():
    v = random_a2_potential(random.Random(12), 2)
    assert not any(difference_pattern(v, j, 2) for j in range(3))
    assert difference_pattern(vzero(5), 1, 2)
