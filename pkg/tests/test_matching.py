import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.core import matching_weight
from stacktsp.generators import gen_random
from stacktsp.matching import (_blossom, optimal_matching, optimal_near_perfect_matching,
                               optimal_perfect_matching)

from conftest import all_perfect_matchings


def best_by_enumeration(vertices, d, goal):
    vals = [matching_weight(d, m) for m in all_perfect_matchings(sorted(vertices))]
    return min(vals) if goal == "min" else max(vals)


@given(st.integers(1, 6), st.integers(0, 10 ** 6), st.sampled_from(["min", "max"]))
def test_perfect_matching_is_optimal(half, seed, goal):
    d = gen_random("symmetric", 2 * half - 1, 2, seed=seed).dP
    vs = list(range(2 * half))
    m = optimal_perfect_matching(vs, d, goal)
    assert sorted(v for e in m for v in e) == vs
    assert matching_weight(d, m) == best_by_enumeration(vs, d, goal)


@given(st.integers(1, 5), st.integers(0, 10 ** 6), st.sampled_from(["min", "max"]))
def test_near_perfect_matching_is_optimal(half, seed, goal):
    d = gen_random("symmetric", 2 * half, 2, seed=seed).dD
    vs = list(range(2 * half + 1))
    m, exposed = optimal_near_perfect_matching(vs, d, goal)
    covered = sorted(v for e in m for v in e)
    assert covered == [v for v in vs if v != exposed]
    vals = [best_by_enumeration([v for v in vs if v != x], d, goal) for x in vs]
    assert matching_weight(d, m) == (min(vals) if goal == "min" else max(vals))


def test_blossom_agrees_with_subset_dp():
    rng = random.Random(1)
    for trial in range(30):
        size = rng.choice([4, 6, 8, 10])
        goal = rng.choice(["min", "max"])
        d = gen_random("symmetric", size - 1, 2, seed=trial, high=20).dP
        vs = list(range(size))
        assert matching_weight(d, _blossom(vs, d, goal, perfect=True)) == \
            matching_weight(d, optimal_perfect_matching(vs, d, goal))


def test_rational_weights_and_parity_errors():
    d = [[Fraction(0), Fraction(1, 3)], [Fraction(1, 3), Fraction(0)]]
    assert optimal_matching([0, 1], d) == (((0, 1),), None)
    with pytest.raises(ValueError):
        optimal_perfect_matching([0, 1, 2], [[0] * 3] * 3)
    with pytest.raises(ValueError):
        optimal_near_perfect_matching([0, 1], d)
