"""Acceptance criteria 1-9, checked exactly over Q (tolerance zero).

Each ``criterion_k`` returns ``(ok, detail)``. Under pytest every criterion
is one test and a PASS/FAIL line per criterion is printed in the terminal
summary; ``python3 tests/test_acceptance.py`` prints the same lines
directly. Wall-clock limits are part of each verdict.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import laurent  # noqa: E402
from conftest import random_a2_potential, random_graded, random_vec, record_acceptance  # noqa: E402
from twisted_mkdv.cli import sample_parameters  # noqa: E402
from twisted_mkdv.dressing import a1_vs_a2_flow, flow_forms_agree, mkdv_vector, verify_tangency_many  # noqa: E402
from twisted_mkdv.errors import MkdvError  # noqa: E402
from twisted_mkdv.exact import ONE, RatFn  # noqa: E402
from twisted_mkdv.generation import (  # noqa: E402
    degree_increasing_sequences,
    fertility_identity,
    generate,
    is_degree_increasing,
    is_generic,
)
from twisted_mkdv.loop import (  # noqa: E402
    AlgebraDims,
    GradedElem,
    LoopOperator,
    ad_exp,
    commutator,
    f_vector,
    identity,
    lambda_power,
    miura_operator,
    product,
    unit,
    vneg,
    vscale,
)
from twisted_mkdv.miura import conjugated_trivial, family_derivative, family_oper, oper_from_tuple  # noqa: E402
from twisted_mkdv.pdo import (  # noqa: E402
    KernelCase,
    first_coefficient,
    kdv_vector,
    kernel_lemma_check,
    miura_map,
    miura_tangent,
    pdo_pow,
    pdo_root,
    pdo_root_refine,
)

F = Fraction
N2 = 2
CELLS = degree_increasing_sequences(N2, 3)
SEEDS = range(5)


def cell_params(J, seed):
    return sample_parameters(len(J), 1000 * seed + 7 * len(J) + sum(J))


def _timed(limit):
    start = time.perf_counter()
    return lambda: (time.perf_counter() - start, time.perf_counter() - start < limit)


# ---------------------------------------------------------------- 1. algebra bedrock

def _closed_exp(n, j, g):
    d = AlgebraDims(n)
    out = identity(d) + GradedElem(d, {-1: vscale(f_vector(n, j), g)})
    if j == n:
        out = out + GradedElem(d, {-2: unit(d.N, n, g * g * 2)})
    return out


def criterion_1():
    clock = _timed(10)
    n, N = 2, 5
    fails = []
    for r in range(1, 12):
        if not laurent.equal(laurent.from_graded_entrywise(lambda_power(r, n, None)), laurent.lam_power(N, r)):
            fails.append(f"Lambda^{r}")
    rng = random.Random(1)
    L = miura_operator(n, random_a2_potential(rng, n))
    g = RatFn(ONE.num, RatFn.x().num + 3)
    for j in range(n + 1):
        X = GradedElem(AlgebraDims(n), {-1: vscale(f_vector(n, j), g)})
        M, Minv = _closed_exp(n, j, g), _closed_exp(n, j, -g)
        body = product(product(M, L.body), Minv) + product(M, Minv.derivative())
        if not ad_exp(X, L, 6).same_as(LoopOperator(body), -6):
            fails.append(f"exp form j={j}")
    for _ in range(100):
        A = random_graded(rng, n, rng.sample(range(-5, 6), 2), const=False)
        B = random_graded(rng, n, rng.sample(range(-5, 6), 2), const=False)
        if not laurent.equal(laurent.from_graded(commutator(A, B)),
                             laurent.commutator(laurent.from_graded(A), laurent.from_graded(B))):
            fails.append("commutator")
    elapsed, fast = clock()
    return not fails and fast, f"11 powers, 3 exponentials, 100 commutators, {len(fails)} mismatches, {elapsed:.1f}s"


# ---------------------------------------------------------------- 2. generation

def criterion_2():
    clock = _timed(60)
    fails = []
    count = 0
    for J in CELLS:
        _, k = is_degree_increasing(J, N2)
        for seed in SEEDS:
            c = cell_params(J, seed)
            y = generate(J, c, N2).y
            count += 1
            if not (y.is_monic() and is_generic(y) and y.degrees == k):
                fails.append((J, c))
                continue
            try:
                steps = fertility_identity(y)
            except MkdvError:
                fails.append((J, c))
                continue
            if len(steps) != N2 + 1 or any(s.eps == 0 or s.eps.denominator != 1 for s in steps):
                fails.append((J, c))
    elapsed, fast = clock()
    return not fails and fast, f"{len(CELLS)} cells x {len(SEEDS)} c = {count} tuples, {len(fails)} failures, {elapsed:.1f}s"


# ---------------------------------------------------------------- 3. oper equality

def criterion_3():
    clock = _timed(60)
    fails = 0
    count = 0
    for J in CELLS:
        for seed in SEEDS:
            c = cell_params(J, seed)
            fam = family_oper(J, c, N2)
            count += 1
            if fam.oper != oper_from_tuple(generate(J, c, N2).y):
                fails += 1
            elif not conjugated_trivial(fam, 4).same_as(fam.oper.operator(), -4):
                fails += 1
    elapsed, fast = clock()
    return fails == 0 and fast, f"{count} opers to depth 4, {fails} failures, {elapsed:.1f}s"


# ---------------------------------------------------------------- 4. flow forms

FLOW_CELLS = [J for J in CELLS if J][:10]


def criterion_4():
    clock = _timed(120)
    fails = 0
    for k, J in enumerate(FLOW_CELLS):
        L = family_oper(J, cell_params(J, k), N2).oper
        for r in (1, 3, 7):
            if not (flow_forms_agree(L, r) and a1_vs_a2_flow(L, r)):
                fails += 1
    elapsed, fast = clock()
    return fails == 0 and fast, f"{len(FLOW_CELLS)} opers x r in {{1,3,7}}, {fails} failures, {elapsed:.1f}s"


# ---------------------------------------------------------------- 5. tangency, one step

def criterion_5():
    clock = _timed(30)
    fails = []
    for j in range(N2 + 1):
        c = cell_params((j,), 3)
        reps = verify_tangency_many((j,), c, [1, 3, 7, 9], N2)
        first = reps[0]
        if not (first.ok and first.gamma == (F(-1),)
                and first.flow == vneg(family_derivative((j,), c, 1, N2))):
            fails.append((j, 1))
        for rep in reps[1:]:
            if not rep.flow_is_zero:
                fails.append((j, rep.r))
    elapsed, fast = clock()
    return not fails and fast, f"j in {{0,1,2}}: gamma_1 = -1, zero flows r in {{3,7,9}}, failures {fails}, {elapsed:.1f}s"


# ---------------------------------------------------------------- 6. tangency, two steps

TWO_STEP = [J for J in CELLS if len(J) == 2]


def criterion_6():
    clock = _timed(600)
    fails = []
    for J in TWO_STEP:
        for seed in range(3):
            c = cell_params(J, seed)
            for rep in verify_tangency_many(J, c, [1, 3, 7, 9, 11], N2):
                if not rep.ok or (rep.r > 8 and not rep.flow_is_zero):
                    fails.append((J, c, rep.r))
    elapsed, fast = clock()
    return not fails and fast, (f"{len(TWO_STEP)} cells x 3 c x r in {{1,3,7,9,11}}, "
                                f"{len(fails)} failures, {elapsed:.1f}s")


# ---------------------------------------------------------------- 7. Miura / KdV compatibility

KDV_CELLS = [(2,), (1, 0), (2, 1), (1, 2), (0, 1)]


def criterion_7():
    clock = _timed(180)
    n, N = N2, 2 * N2 + 1
    floor = -(2 * n + 2)
    fails = []
    for k, J in enumerate(KDV_CELLS):
        c = cell_params(J, k)
        v = family_oper(J, c, n).oper.v
        v_prev = family_oper(J[:-1], c[:-1], n).oper.v
        flows = {r: mkdv_vector(family_oper(J, c, n).oper, r) for r in (1, 3)}
        jm = J[-1]
        moved = {jm % N, (N - jm) % N}
        for i in range(N):
            L = miura_map(v, i)
            for r, flow in flows.items():
                if not miura_tangent(v, flow, i).same_as(kdv_vector(L, r)):
                    fails.append(("kdv", J, i, r))
            if (i in moved) == (L == miura_map(v_prev, i)):
                fails.append(("gauge", J, i))
        L = miura_map(v, 1)
        root = pdo_root(L, floor - 2 * n)
        if not pdo_pow(root, N, floor).same_as(L, floor):
            fails.append(("root", J))
        if not pdo_root(L, floor).same_as(pdo_root_refine(L, floor)):
            fails.append(("refine", J))
    elapsed, fast = clock()
    return not fails and fast, f"{len(KDV_CELLS)} opers, i = 0..4, r in {{1,3}}, failures {fails}, {elapsed:.1f}s"


# ---------------------------------------------------------------- 8. tangent-map formulas

KERNEL_INSTANCES = [
    ((1, 0), KernelCase("full")),
    ((2, 0), KernelCase("full")),
    ((2, 1), KernelCase("skip-pair", 1)),
    ((0, 1), KernelCase("skip-pair", 1)),
    ((1, 2), KernelCase("skip-center")),
    ((0, 2), KernelCase("skip-center")),
]


def criterion_8():
    clock = _timed(120)
    fails = []
    rng = random.Random(8)
    for n, count in ((2, 50), (3, 10)):
        N = 2 * n + 1
        for _ in range(count):
            v = random_a2_potential(rng, n)
            X = random_vec(rng, N)
            for i in range(N):
                if miura_tangent(v, X, i).coeff(N - 2) != first_coefficient(v, X, i):
                    fails.append(("first", n, i))
    x = RatFn.x()
    functions = [ONE, x, RatFn(ONE.num, x.num + 2), RatFn(ONE.num, x.num - 3)]
    kernels = 0
    for J, case in KERNEL_INSTANCES:
        c = cell_params(J, 1)
        v = family_oper(J, c, N2).oper.v
        rep = kernel_lemma_check(case, v, functions, [family_derivative(J, c, len(J), N2)])
        kernels += len(rep.kernel)
        if not rep.ok or not rep.kernel:
            fails.append(("kernel", J, case.kind))
    elapsed, fast = clock()
    return not fails and fast, (f"60 random (v, X), {len(KERNEL_INSTANCES)} kernel instances "
                                f"({kernels} kernel vectors), failures {fails}, {elapsed:.1f}s")


# ---------------------------------------------------------------- 9. determinism

def criterion_9():
    runs = [
        ["generate", "-n", "2", "-J", "2,1,0", "--seed", "5"],
        ["verify", "-n", "2", "-J", "2,1", "--seed", "5", "-r", "1,3"],
        ["export", "-n", "2", "-J", "1,2", "--seed", "5", "--what", "oper"],
    ]
    fails = []
    for argv in runs:
        outs = [
            subprocess.run([sys.executable, "-m", "twisted_mkdv", *argv], capture_output=True, check=False)
            for _ in range(2)
        ]
        if outs[0].returncode != 0 or outs[0].stdout != outs[1].stdout or not outs[0].stdout:
            fails.append(argv[0])
    return not fails, f"{len(runs)} commands run twice each, byte-identical: {not fails}"


CRITERIA = {
    1: ("algebra bedrock", criterion_1),
    2: ("generation and criticality", criterion_2),
    3: ("oper equality", criterion_3),
    4: ("flow forms and A1 = A2", criterion_4),
    5: ("tangency with one step", criterion_5),
    6: ("tangency with two steps", criterion_6),
    7: ("Miura / KdV compatibility", criterion_7),
    8: ("tangent-map formulas", criterion_8),
    9: ("determinism", criterion_9),
}


def _line(k, ok, detail):
    return f"CRITERION {k} {'PASS' if ok else 'FAIL'} {CRITERIA[k][0]}: {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k][1]()
    line = _line(k, ok, detail)
    record_acceptance(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    status = 0
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k][1]()
        print(_line(k, ok, detail), flush=True)
        status |= not ok
    sys.exit(status)
