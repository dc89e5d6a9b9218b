from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.core import (Instance, InvariantError, LoadingPlan, Solution, at_least, better,
                           cycle_from_edges, flip, is_permutation_tour, pick, reverse_tour,
                           to_fraction, tour_cost, tour_square, validate_instance)
from stacktsp.generators import gen_random


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction("3/2") == Fraction(3, 2)


def test_goal_helpers():
    assert better(1, 2, "min") and better(2, 1, "max")
    assert at_least(2, 2, "min") and at_least(2, 2, "max")
    assert not better(2, 2, "min")
    assert flip("min") == "max"
    assert pick([3, 1, 2], "min") == 1 and pick([3, 1, 2], "max") == 3


def test_reverse_and_square():
    assert reverse_tour((0, 1, 2, 3)) == (0, 3, 2, 1)
    assert tour_square((0, 1, 2, 3, 4)) == (0, 2, 4, 1, 3)


def test_cycle_from_edges():
    assert cycle_from_edges([(0, 2), (2, 1), (1, 0)]) == (0, 1, 2)
    assert cycle_from_edges([(0, 1), (1, 0)]) == (0, 1)
    # two triangles are not one cycle
    assert cycle_from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]) is None
    assert cycle_from_edges([(0, 1), (1, 2)]) is None


def test_instance_validation():
    d = [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        Instance(1, 1, 1, d, d, "best")
    with pytest.raises(ValueError):
        Instance(2, 1, 1, [[0] * 3] * 3, [[0] * 3] * 3)   # k*c < n
    with pytest.raises(ValueError):
        Instance(2, 2, 1, d, d)                            # wrong shape


def test_sigma_matrix_and_pair_identity():
    inst = gen_random("general", 5, 2, seed=4)
    t = (0, 3, 1, 5, 2, 4)
    # (T, T^-) is worth dS(T)
    assert inst.pair_cost(t, reverse_tour(t)) == inst.sigma_cost(t)
    den, p, d = inst.scaled
    assert all(p[i][j] == inst.dP[i][j] * den for i in range(6) for j in range(6))


def test_validation_flags():
    inst = gen_random("bivalued", 6, 2, seed=1)
    rep = validate_instance(inst)
    assert rep.ok and rep.symmetric and rep.bivalued and rep.tight
    bad = Instance(2, 2, 1, [[0, -1, 1], [1, 0, 1], [1, 1, 0]], [[0] * 3] * 3)
    assert not validate_instance(bad).ok


def test_plan_helpers():
    plan = LoadingPlan(((3, 1), (2,)))
    assert plan.canonical().rows == ((2,), (3, 1))
    assert plan.padded(3).rows[-1] == ()
    assert str(plan) == "r1= 3 1 ; r2= 2"
    with pytest.raises(ValueError):
        plan.padded(1)


@given(st.permutations(list(range(1, 8))))
def test_square_of_odd_tour_is_a_tour(perm):
    t = (0,) + tuple(perm)
    assert is_permutation_tour(tour_square(t), 7)
    assert is_permutation_tour(reverse_tour(t), 7)


@given(st.lists(st.integers(0, 9), min_size=9, max_size=9))
def test_tour_cost_sums_edges(vals):
    d = [[0, vals[0], vals[1]], [vals[2], 0, vals[3]], [vals[4], vals[5], 0]]
    assert tour_cost(d, (0, 1, 2)) == vals[0] + vals[3] + vals[4]


def test_solution_build():
    inst = gen_random("symmetric", 3, 2, seed=0)
    s = Solution.build(inst, LoadingPlan(((1, 2), (3,))), (0, 1, 2, 3), (0, 3, 2, 1))
    assert s.value == inst.pair_cost((0, 1, 2, 3), (0, 3, 2, 1))


def test_invariant_error_is_runtime():
    assert issubclass(InvariantError, RuntimeError)
