"""Exhaustive reference answers for small instances.

``exact_extremes`` enumerates every loading plan (rows treated as
interchangeable, so each loading is seen once), and evaluates the best and
worst pickup and delivery tour of all plans at once with the chain-merge DP
vectorised across plans.  The result carries OPT, WOR, the best and worst
single tours for each matrix and for the combined matrix, and witnesses.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .core import Instance, LoadingPlan, Solution, Tour, flip, tour_cost
from .pctsp import best_tour_given_plan
from .tsp import exact_dp

ORACLE_CAP = 8


class OracleTooLarge(ValueError):
    pass


def _set_partitions(items: list[int], k: int, c: int):
    """Restricted-growth enumeration of partitions into <= k blocks of <= c."""
    blocks: list[list[int]] = []

    def rec(i):
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            if len(b) < c:
                b.append(items[i])
                yield from rec(i + 1)
                b.pop()
        if len(blocks) < k:
            blocks.append([items[i]])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


@lru_cache(maxsize=16)
def plan_groups(n: int, k: int, c: int) -> tuple[tuple[tuple[int, ...], tuple[np.ndarray, ...]], ...]:
    """All loadings of items 1..n, grouped by row lengths.

    Each group is (lengths, arrays) where arrays[r] has shape (plans, lengths[r]).
    Rows within a plan are sorted by first item.
    """
    groups: dict[tuple[int, ...], list[list[tuple[int, ...]]]] = {}
    for blocks in _set_partitions(list(range(1, n + 1)), k, c):
        for orders in product(*(permutations(b) for b in blocks)):
            rows = sorted(orders, key=lambda r: r[0])
            key = tuple(len(r) for r in rows)
            groups.setdefault(key, []).append(rows)
    out = []
    for key in sorted(groups):
        plans = groups[key]
        arrays = tuple(np.array([p[r] for p in plans], dtype=np.int64).reshape(len(plans), key[r])
                       for r in range(len(key)))
        out.append((key, arrays))
    return tuple(out)


def count_plans(n: int, k: int, c: int) -> int:
    return sum(a[0].shape[0] for _, a in plan_groups(n, k, c))


def _merge_all(W: np.ndarray, chains: tuple[np.ndarray, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Min and max closed-tour cost for every plan in a group."""
    k = len(chains)
    lens = [ch.shape[1] for ch in chains]
    P = chains[0].shape[0]
    zeros = np.zeros(P, dtype=np.int64)
    lo = {(tuple([0] * k), -1): zeros}
    hi = {(tuple([0] * k), -1): zeros}
    layer = [(tuple([0] * k), -1)]
    for _ in range(sum(lens)):
        nlo: dict = {}
        nhi: dict = {}
        for state in layer:
            counts, last = state
            here = zeros if last < 0 else chains[last][:, counts[last] - 1]
            for r in range(k):
                if counts[r] == lens[r]:
                    continue
                nxt = chains[r][:, counts[r]]
                step = W[here, nxt]
                key = (counts[:r] + (counts[r] + 1,) + counts[r + 1:], r)
                a, b = lo[state] + step, hi[state] + step
                if key in nlo:
                    nlo[key] = np.minimum(nlo[key], a)
                    nhi[key] = np.maximum(nhi[key], b)
                else:
                    nlo[key], nhi[key] = a, b
        lo.update(nlo)
        hi.update(nhi)
        layer = list(nlo)
    full = tuple(lens)
    best_lo = best_hi = None
    for r in range(k):
        key = (full, r)
        if key not in lo:
            continue
        back = W[chains[r][:, -1], 0]
        a, b = lo[key] + back, hi[key] + back
        best_lo = a if best_lo is None else np.minimum(best_lo, a)
        best_hi = b if best_hi is None else np.maximum(best_hi, b)
    return best_lo, best_hi


def plan_table(inst: Instance):
    """For every loading: (plan arrays, min/max pickup and delivery values).

    Values are integers on the scale of ``inst.scaled``.
    """
    den, p, d = inst.scaled
    dtype = np.int64
    bound = 2 * (inst.n + 1) * max(max(abs(x) for row in m for x in row) for m in (p, d)) + 1
    if bound >= 2 ** 62:
        dtype = object
    WP = np.array(p, dtype=dtype)
    WD = np.array(d, dtype=dtype)
    out = []
    for key, arrays in plan_groups(inst.n, inst.k, inst.c):
        rev = tuple(a[:, ::-1] for a in arrays)
        plo, phi = _merge_all(WP, arrays)
        dlo, dhi = _merge_all(WD, rev)
        out.append((arrays, plo, phi, dlo, dhi))
    return den, out


@dataclass(frozen=True)
class Extremes:
    opt: Fraction
    wor: Fraction
    opt_solution: Solution
    wor_solution: Solution
    opt_pickup_tsp: Fraction   # best single pickup tour, ignoring the plan
    opt_delivery_tsp: Fraction
    opt_sigma: Fraction        # best tour for the combined matrix
    wor_sigma: Fraction
    wor_sigma_tour: Tour       # worst tour for the combined matrix
    plans: int


def _pick_index(values: np.ndarray, goal: str) -> int:
    return int(np.argmin(values)) if goal == "min" else int(np.argmax(values))


def exact_extremes(inst: Instance, cap: int | None = None) -> Extremes:
    """OPT and WOR over every feasible solution, by full plan enumeration."""
    cap = cap if cap is not None else int(os.environ.get("STACKTSP_ORACLE_CAP", ORACLE_CAP))
    if inst.n > cap:
        raise OracleTooLarge(f"oracle is capped at n={cap}, instance has n={inst.n}")
    goal = inst.goal
    den, table = plan_table(inst)
    best = worst = None
    for arrays, plo, phi, dlo, dhi in table:
        if goal == "min":
            good, bad = plo + dlo, phi + dhi
        else:
            good, bad = phi + dhi, plo + dlo
        i = _pick_index(good, goal)
        j = _pick_index(bad, flip(goal))
        if best is None or _strict(good[i], best[0], goal):
            best = (good[i], tuple(tuple(int(x) for x in a[i]) for a in arrays))
        if worst is None or _strict(bad[j], worst[0], flip(goal)):
            worst = (bad[j], tuple(tuple(int(x) for x in a[j]) for a in arrays))
    opt_sol = _witness(inst, best[1], goal)
    wor_sol = _witness(inst, worst[1], flip(goal))
    if opt_sol.value != Fraction(int(best[0]), den) or wor_sol.value != Fraction(int(worst[0]), den):
        raise AssertionError("oracle witness disagrees with the vectorised table")
    tp = exact_dp(inst.dP, goal)
    td = exact_dp(inst.dD, goal)
    ts = exact_dp(inst.dS, goal)
    tw = exact_dp(inst.dS, flip(goal))
    return Extremes(
        opt=opt_sol.value, wor=wor_sol.value,
        opt_solution=opt_sol, wor_solution=wor_sol,
        opt_pickup_tsp=Fraction(tour_cost(inst.dP, tp)),
        opt_delivery_tsp=Fraction(tour_cost(inst.dD, td)),
        opt_sigma=Fraction(tour_cost(inst.dS, ts)),
        wor_sigma=Fraction(tour_cost(inst.dS, tw)),
        wor_sigma_tour=tw,
        plans=count_plans(inst.n, inst.k, inst.c),
    )


def _strict(a, b, goal: str) -> bool:
    return a < b if goal == "min" else a > b


def _witness(inst: Instance, rows, goal: str) -> Solution:
    plan = LoadingPlan(rows).padded(inst.k)
    tp, vp = best_tour_given_plan(inst, plan, "pickup", goal)
    td, vd = best_tour_given_plan(inst, plan, "delivery", goal)
    return Solution(plan, tp, td, vp + vd)


def standard_ratio(apx: Fraction, opt: Fraction) -> Fraction | None:
    """APX/OPT, None when OPT is zero."""
    return None if opt == 0 else Fraction(apx) / opt


def differential_ratio(apx: Fraction, opt: Fraction, wor: Fraction) -> Fraction:
    """(APX - WOR) / (OPT - WOR), taken as 1 when OPT equals WOR."""
    if opt == wor:
        return Fraction(1)
    return (Fraction(apx) - wor) / (opt - wor)


@dataclass(frozen=True)
class RatioReport:
    apx: Fraction
    opt: Fraction
    wor: Fraction
    standard: Fraction | None
    differential: Fraction


def ratio_report(apx: Fraction, ext: Extremes) -> RatioReport:
    return RatioReport(apx, ext.opt, ext.wor, standard_ratio(apx, ext.opt),
                       differential_ratio(apx, ext.opt, ext.wor))


def brute_force_pairs(inst: Instance) -> tuple[Fraction, Fraction]:
    """OPT and WOR over all tour pairs checked by the capacitated test.

    Independent of the plan enumeration above; usable up to n = 5 or so.
    """
    from .feasibility import feasible_capacitated

    items = list(inst.items)
    best = worst = None
    tours = [(0,) + p for p in permutations(items)]
    for tp in tours:
        vp = tour_cost(inst.dP, tp)
        for td in tours:
            if feasible_capacitated(tp, td, inst.k, inst.c) is None:
                continue
            v = vp + tour_cost(inst.dD, td)
            if best is None or _strict(v, best, inst.goal):
                best = v
            if worst is None or _strict(v, worst, flip(inst.goal)):
                worst = v
    return Fraction(best), Fraction(worst)

