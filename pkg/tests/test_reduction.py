import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.core import reverse_tour, tour_cost
from stacktsp.feasibility import verify_solution
from stacktsp.generators import PROFILES, gen_random
from stacktsp.oracle import exact_extremes
from stacktsp.reduction import (block_plan, differential_transforms, embed_tsp, reduce_sigma,
                                reduce_two_tours, resolve_method, reverse_pair)
from stacktsp.tsp import tsp_solve

from conftest import all_tours


def random_symmetric(size, rng):
    d = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            d[i][j] = d[j][i] = Fraction(rng.randint(1, 30), rng.choice([1, 2]))
    return d


def test_block_plan_and_aliases():
    assert block_plan((0, 3, 1, 4, 2), 2, 2).rows == ((3, 1), (4, 2))
    assert block_plan((0, 3, 1, 4), 3, 2).rows == ((3, 1), (4,), ())
    assert resolve_method("nn") == "nearest_neighbor"
    assert resolve_method("exact_dp") == "exact_dp"


@given(st.sampled_from(PROFILES), st.integers(2, 7), st.integers(1, 3), st.integers(0, 10 ** 6),
       st.sampled_from(["min", "max"]))
def test_reverse_pair_is_feasible(profile, n, k, seed, goal):
    inst = gen_random(profile, n, k, seed=seed, goal=goal)
    t = tuple([0] + random.Random(seed).sample(range(1, inst.size), n))
    sol = reverse_pair(inst, t)
    assert verify_solution(inst, sol) == []
    assert sol.value == tour_cost(inst.dS, t)


@pytest.mark.parametrize("goal", ["min", "max"])
def test_two_tour_reduction_bounds(goal):
    # with exact tours the sigma reduction is optimal over reversed pairs,
    # and both reductions sit between the two single-matrix tour optima
    for seed in range(25):
        inst = gen_random("general", 5, 2, seed=seed, goal=goal)
        ext = exact_extremes(inst)
        two = reduce_two_tours(inst)
        sig = reduce_sigma(inst)
        assert verify_solution(inst, two) == [] and verify_solution(inst, sig) == []
        assert sig.value == ext.opt_sigma
        lo = ext.opt_pickup_tsp + ext.opt_delivery_tsp
        if goal == "min":
            assert lo <= ext.opt <= sig.value <= two.value
        else:
            assert lo >= ext.opt >= sig.value >= two.value


def test_embedding_preserves_tour_values():
    rng = random.Random(5)
    for size in (4, 5, 6):
        d = [[0 if i == j else Fraction(rng.randint(1, 20)) for j in range(size)] for i in range(size)]
        inst = embed_tsp(d, 2, size // 2)
        for t in all_tours(size):
            assert reverse_pair(inst, t).value == tour_cost(d, t)
        _, best = tsp_solve(d, "exact_dp", "min")
        assert exact_extremes(inst).opt == best


def test_embedding_rejects_small_capacity():
    with pytest.raises(ValueError):
        embed_tsp([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 1, 1)


@given(st.integers(3, 7), st.integers(0, 10 ** 6))
def test_transform_identities(size, seed):
    rng = random.Random(seed)
    d = random_symmetric(size, rng)
    d1, d2, hi, lo = differential_transforms(d)
    for _ in range(5):
        t = tuple([0] + rng.sample(range(1, size), size - 1))
        assert tour_cost(d1, t) == size * hi - tour_cost(d, t)
        assert tour_cost(d2, t) == tour_cost(d, t) + size * (hi - 2 * lo)
        assert tour_cost(d1, reverse_tour(t)) == tour_cost(d1, t)
    for i in range(size):
        for j in range(size):
            for k in range(size):
                if len({i, j, k}) == 3:
                    assert d2[i][j] <= d2[i][k] + d2[k][j]


def test_transforms_need_symmetry():
    with pytest.raises(ValueError):
        differential_transforms([[0, 1], [2, 0]])
