from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.core import is_permutation_tour, tour_cost
from stacktsp.generators import gen_random
from stacktsp.tsp import METHODS, TooLarge, brute_force_tsp, exact_dp, tsp_solve


@given(st.integers(1, 7), st.integers(0, 10 ** 6), st.sampled_from(["min", "max"]),
       st.sampled_from(["general", "symmetric"]))
def test_held_karp_matches_enumeration(n, seed, goal, profile):
    d = gen_random(profile, n, 2, seed=seed).dP
    t = exact_dp(d, goal)
    assert is_permutation_tour(t, n)
    assert tour_cost(d, t) == brute_force_tsp(d, goal)[1]


def test_four_vertices_three_tours():
    d = gen_random("symmetric", 3, 2, seed=9).dP
    costs = {tour_cost(d, t) for t in [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]}
    assert tour_cost(d, exact_dp(d)) == min(costs)


def test_double_tree_within_twice_optimal():
    for seed in range(40):
        d = gen_random("metric_symmetric", 7, 2, seed=seed).dP
        _, val = tsp_solve(d, "double_tree_metric")
        assert val <= 2 * brute_force_tsp(d)[1]


def test_double_tree_rejects_non_metric():
    d = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    with pytest.raises(ValueError):
        tsp_solve(d, "double_tree_metric")


@pytest.mark.parametrize("method", METHODS)
def test_every_method_returns_a_tour(method):
    inst = gen_random("metric_symmetric", 6, 2, seed=3)
    goal = "max" if method == "greedy_max" else "min"
    t, val = tsp_solve(inst.dP, method, goal)
    assert is_permutation_tour(t, 6) and val == tour_cost(inst.dP, t)


def test_cap_and_trivial_sizes():
    with pytest.raises(TooLarge):
        exact_dp([[0] * 6] * 6, cap=5)
    assert exact_dp([[Fraction(0)]]) == (0,)
    assert exact_dp([[0, 3], [3, 0]]) == (0, 1)
