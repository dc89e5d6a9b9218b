import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.apx_two import Component, apx_2dtspms, plan_from_components
from stacktsp.core import Solution, is_metric, is_symmetric
from stacktsp.feasibility import verify_solution
from stacktsp.generators import (PROFILES, bivalued_tight_matchings, bivalued_tight_plan,
                                 bivalued_tight_values, gen_bivalued_tight, gen_metric_tight,
                                 gen_random, metric_tight_values)
from stacktsp.pctsp import best_pair_given_plan


@given(st.sampled_from(PROFILES), st.integers(1, 8), st.integers(0, 10 ** 6))
def test_profiles_are_deterministic_and_shaped(profile, n, seed):
    a = gen_random(profile, n, 2, seed=seed)
    b = gen_random(profile, n, 2, seed=seed)
    assert a.dP == b.dP and a.dD == b.dD
    assert a.c == -(-n // 2)
    if profile != "general":
        assert is_symmetric(a.dP) and is_symmetric(a.dD)
    if profile == "metric_symmetric":
        assert is_metric(a.dP) and is_metric(a.dD)
    if profile == "bivalued":
        assert {x for r in a.dP for x in r} <= {0, 1, 2}


def test_unknown_profile():
    with pytest.raises(ValueError):
        gen_random("euclid", 4)


@pytest.mark.parametrize("c", [2, 3, 5])
def test_metric_tight_witness(c):
    lam = Fraction(1, c - 1)
    inst, plan, pickup, delivery = gen_metric_tight(lam, 2, c)
    sol = Solution.build(inst, plan, pickup, delivery)
    assert verify_solution(inst, sol) == []
    assert is_metric(inst.dP) and is_metric(inst.dD)
    assert sol.value == metric_tight_values(lam, 2, c)[0]


@pytest.mark.parametrize("n_prime", [2, 3, 4])
@pytest.mark.parametrize("lam,mu", [(1, 0), (1, 2)])
def test_bivalued_tight_closed_forms(n_prime, lam, mu):
    inst = gen_bivalued_tight(lam, mu, n_prime)
    assert inst.goal == ("max" if lam > mu else "min") and inst.n == 4 * n_prime
    opt, apx = bivalued_tight_values(lam, mu, n_prime)
    size = 4 * n_prime + 1
    assert opt == 2 * size * lam
    assert best_pair_given_plan(inst, bivalued_tight_plan(n_prime)).value == apx


def test_smallest_bivalued_family_has_no_bad_plan():
    # with four items the adversarial loading is as good as the optimum
    inst = gen_bivalued_tight(1, 0, 1)
    assert best_pair_given_plan(inst, bivalued_tight_plan(1)).value == 10
    assert bivalued_tight_values(1, 0, 1) == (10, 4)


@pytest.mark.parametrize("lam,mu", [(1, 0), (2, 1), (1, 2)])
def test_smallest_bivalued_family_every_layout_is_optimal(lam, mu):
    inst = gen_bivalued_tight(lam, mu, 1)
    opt = bivalued_tight_values(lam, mu, 1)[0]
    for order in itertools.permutations([(1, 2), (3, 4)]):
        for flips in itertools.product([False, True], repeat=2):
            comps = [Component("path", (0,))] + [Component("cycle", c[::-1] if f else c)
                                                 for c, f in zip(order, flips)]
            assert best_pair_given_plan(inst, plan_from_components(comps)).value == opt


def test_bivalued_tight_matchings_are_optimal_choices():
    inst = gen_bivalued_tight(1, 0, 2)
    m = bivalued_tight_matchings(2)
    r = apx_2dtspms(inst, m, m)
    assert verify_solution(inst, r.solution) == []
