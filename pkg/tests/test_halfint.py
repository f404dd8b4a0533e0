import random
from fractions import Fraction

import pytest
from conftest import instances
from hypothesis import given, settings

from maxandeven.generate import random_instance
from maxandeven.graphs import Digraph, digraph_to_instance
from maxandeven.halfint import (
    InvariantViolation,
    affine_form,
    collapse_blocks,
    flip_signs,
    half_integral_solve,
    select_argmin,
    sorted_order,
)
from maxandeven.lp import build_lp, simplex_solve, tighten
from maxandeven.model import (
    Clause,
    Instance,
    fractional_objective,
    normalize,
    objective_value,
)
from maxandeven.oracle import brute_ternary_opt

F = Fraction


def test_flip_signs():
    inst = Instance.from_lists(2, [[1, -2]])
    flipped, flip, c = flip_signs(inst, [F(-1, 2), F(1, 4)])
    assert flip.sigma == (-1, 1)
    assert c == (F(1, 2), F(1, 4))
    assert flipped.clauses == (Clause.of(-1, -2),)

    same, flip, c = flip_signs(inst, [F(0), F(1)])
    assert flip.sigma == (1, 1) and same == inst

    one = Instance.from_lists(1, [[1]])
    flipped, _, c = flip_signs(one, [F(-1)])
    assert flipped.clauses == (Clause.of(-1),) and c == (1,)
    assert fractional_objective(one, [F(-1)]) == fractional_objective(flipped, c) == 0


def test_sorted_order():
    assert sorted_order([F(1, 4), F(0), F(1, 4)]) == [2, 1, 3]
    assert sorted_order([F(1, 3)] * 4) == [1, 2, 3, 4]
    assert sorted_order([F(1), F(0)]) == [2, 1]


def test_select_argmin():
    rank = {1: 0, 2: 1}
    assert select_argmin(Clause.of(1, 2), rank) == 0
    assert select_argmin(Clause.of(1, -2), rank) == 1
    assert select_argmin(Clause.of(1, -2), {1: 1, 2: 0}) == 1
    assert select_argmin(Clause.of(-1, -2), rank) == 1
    with pytest.raises(ValueError):
        select_argmin(Clause(), rank)


def test_affine_form_examples():
    f = affine_form(Instance.from_lists(1, [[1]]), [1])
    assert f.constant == F(1, 2) and f.coefficients == (F(1, 2),)

    f = affine_form(Instance.from_lists(1, [[1], [-1]]), [1])
    assert f.constant == 1 and f.coefficients == (0,)
    for x in (F(0), F(1, 2), F(1)):
        assert f.evaluate([x]) == fractional_objective(Instance.from_lists(1, [[1], [-1]]), [x])

    arc = Instance.from_lists(2, [[-1, 2]])
    f = affine_form(arc, [1, 2])
    assert f.constant == F(1, 2) and f.coefficients == (F(-1, 2), 0)


@settings(max_examples=200, deadline=None)
@given(instances(max_n=5, max_m=6, max_k=4))
def test_affine_form_matches_objective_on_sorted_points(inst):
    inst, _ = normalize(inst)
    rng = random.Random(inst.n * 1000 + inst.m)
    for _ in range(5):
        point = [F(rng.randint(0, 6), 6) for _ in range(inst.n)]
        form = affine_form(inst, sorted_order(point))
        assert form.evaluate(point) == fractional_objective(inst, point)


def test_collapse_examples():
    inst = Instance.from_lists(2, [[1], [2]])
    assert collapse_blocks([F(0), F(1)], inst) == (0, 1)

    xnx = Instance.from_lists(1, [[1], [-1]])
    out = collapse_blocks([F(1, 2)], xnx)
    assert out == (0,)
    assert fractional_objective(xnx, out) == 1

    # coefficients of x1, x2 are +1/2 and -1/2 and cancel within the block
    inst = Instance.from_lists(3, [[1], [-2]])
    point = [F(1, 3), F(1, 3), F(1)]
    out = collapse_blocks(point, inst)
    assert out == (0, 0, 1)
    assert fractional_objective(inst, out) == fractional_objective(inst, point) == 1


def test_collapse_rejects_non_optimal_point():
    with pytest.raises(InvariantViolation, match="coefficient sum"):
        collapse_blocks([F(1, 2)], Instance.from_lists(1, [[1]]))


def test_half_integral_examples(cycle3, x_and_not_x):
    t, value = half_integral_solve(Instance.from_lists(2, [[-1, 2]]))
    assert value == 1 and objective_value(Instance.from_lists(2, [[-1, 2]]), t) == 1

    t, value = half_integral_solve(x_and_not_x)
    assert value == 1 and objective_value(x_and_not_x, t) == 1

    inst = digraph_to_instance(cycle3)
    t, value = half_integral_solve(inst)
    assert value == F(3, 2) == brute_ternary_opt(inst)


def test_rejects_unnormalized():
    with pytest.raises(ValueError):
        half_integral_solve(Instance.from_lists(1, [[1, -1]]))


@pytest.mark.parametrize("seed", range(60))
def test_half_integrality_against_ternary_oracle(seed):
    rng = random.Random(seed)
    inst, _ = normalize(random_instance(rng.randint(1, 7), rng.randint(0, 14), 1, 4, rng))
    t, value = half_integral_solve(inst)
    assert set(t.values) <= {-1, 0, 1}
    assert objective_value(inst, t) == value == brute_ternary_opt(inst)


@pytest.mark.parametrize("seed", range(20))
def test_value_preservation_n10(seed):
    rng = random.Random(1000 + seed)
    inst, _ = normalize(random_instance(10, rng.randint(5, 25), 1, 5, rng))
    t, value = half_integral_solve(inst)
    assert objective_value(inst, t) == value


def test_collapse_on_raw_lp_vertices_counts_iterations():
    rng = random.Random(7)
    for _ in range(30):
        inst, _ = normalize(random_instance(6, 12, 1, 3, rng))
        lp = build_lp(inst)
        sol = tighten(inst, lp, simplex_solve(lp))
        flipped, _, c = flip_signs(inst, sol.values[: inst.n])
        out = collapse_blocks(c, flipped)
        assert set(out) <= {0, 1}
        assert fractional_objective(flipped, out) == sol.objective_value


def test_digraph_fractional_optimum_collapses():
    # 3-cycle has a fractional LP optimum at the origin
    inst = digraph_to_instance(Digraph(3, ((1, 2), (2, 3), (3, 1))))
    out = collapse_blocks([F(0)] * 3, inst)
    assert out == (0, 0, 0)
