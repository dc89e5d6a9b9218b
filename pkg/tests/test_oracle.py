from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.core import flip, tour_cost
from stacktsp.feasibility import verify_solution
from stacktsp.generators import gen_random
from stacktsp.oracle import (OracleTooLarge, brute_force_pairs, count_plans, differential_ratio,
                             exact_extremes, ratio_report, standard_ratio)
from stacktsp.tsp import brute_force_tsp


@pytest.mark.parametrize("profile,n,k,goal,seed,opt,wor", [
    # frozen from the tour-pair enumeration, which shares no code with the plan DP
    ("general", 4, 2, "min", 7, 27, 77),
    ("symmetric", 5, 2, "max", 3, 95, 31),
    ("general", 4, 3, "max", 1, 56, 23),
])
def test_frozen_extremes(profile, n, k, goal, seed, opt, wor):
    ext = exact_extremes(gen_random(profile, n, k, seed=seed, goal=goal))
    assert (ext.opt, ext.wor) == (opt, wor)


@given(st.integers(2, 5), st.sampled_from([2, 3]), st.integers(0, 10 ** 6),
       st.sampled_from(["min", "max"]), st.sampled_from(["general", "symmetric", "bivalued"]))
def test_plan_enumeration_matches_pair_enumeration(n, k, seed, goal, profile):
    inst = gen_random(profile, n, k, seed=seed, goal=goal)
    ext = exact_extremes(inst)
    assert (ext.opt, ext.wor) == brute_force_pairs(inst)
    assert verify_solution(inst, ext.opt_solution) == []
    assert verify_solution(inst, ext.wor_solution) == []


def test_single_tour_extremes():
    inst = gen_random("symmetric", 5, 2, seed=11)
    ext = exact_extremes(inst)
    assert ext.opt_pickup_tsp == brute_force_tsp(inst.dP)[1]
    assert ext.opt_sigma == brute_force_tsp(inst.dS)[1]
    assert ext.wor_sigma == brute_force_tsp(inst.dS, flip("min"))[1]
    assert tour_cost(inst.dS, ext.wor_sigma_tour) == ext.wor_sigma


def test_plan_counts():
    # 3 splits into pairs, 2!*2! orders each
    assert count_plans(4, 2, 2) == 12
    # C(5,3) splits, 3!*2! orders
    assert count_plans(5, 2, 3) == 120
    assert count_plans(3, 3, 1) == 1


def test_ratios():
    assert standard_ratio(Fraction(3), Fraction(0)) is None
    assert differential_ratio(5, 5, 5) == 1
    assert differential_ratio(Fraction(7), Fraction(5), Fraction(9)) == Fraction(1, 2)
    rep = ratio_report(Fraction(6), exact_extremes(gen_random("symmetric", 3, 2, seed=0)))
    assert rep.apx == 6


def test_cap(monkeypatch):
    with pytest.raises(OracleTooLarge):
        exact_extremes(gen_random("symmetric", 6, 2, seed=0), cap=5)
    monkeypatch.setenv("STACKTSP_ORACLE_CAP", "3")
    with pytest.raises(OracleTooLarge):
        exact_extremes(gen_random("symmetric", 4, 2, seed=0))
