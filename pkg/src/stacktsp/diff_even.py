"""Differential approximation for two rows when |V| is even.

Start from the matching plan ((i1..i_{v+1}), (j1..j_v)) and also try the plan
with the two rear items swapped; return whichever has the better pair of
optimal tours (ties keep the original plan).

The completion matchings below are what the guarantee is built on, and the
tests check their properties directly:

* ``completion_a``   pairs each level: (i_p, j_p), plus (i_{v+1}, 0);
* ``completion_a2``  is (i1, i2), (i_p, j_{p-2}) for p >= 3, plus (j_v, 0).
"""
from __future__ import annotations

from dataclasses import dataclass

from .apx_two import ApxResult, apx_2dtspms
from .core import Instance, LoadingPlan, Matching, Solution, Tour, at_least, normalize_matching
from .pctsp import best_pair_given_plan


def _rows(plan: LoadingPlan) -> tuple[tuple[int, ...], tuple[int, ...]]:
    r1, r2 = plan.rows
    if len(r1) != len(r2) + 1:
        raise ValueError("expected row 1 to hold exactly one more item than row 2")
    return r1, r2


def completion_a(plan: LoadingPlan) -> Matching:
    i, j = _rows(plan)
    nu = len(j)
    return normalize_matching([(i[p], j[p]) for p in range(nu)] + [(i[nu], 0)])


def completion_a2(plan: LoadingPlan) -> Matching:
    i, j = _rows(plan)
    nu = len(j)
    if nu == 0:
        return normalize_matching([(i[0], 0)])
    edges = [(i[0], i[1])]
    edges += [(i[p], j[p - 2]) for p in range(2, nu + 1)]
    edges.append((j[nu - 1], 0))
    return normalize_matching(edges)


def swap_first(plan: LoadingPlan) -> LoadingPlan:
    """Exchange the rear items of rows 1 and 2."""
    r1, r2 = plan.rows
    if not r2:
        return plan
    return LoadingPlan(((r2[0],) + r1[1:], (r1[0],) + r2[1:]))


def union_tour(plan: LoadingPlan) -> Tour:
    """The Hamiltonian cycle A(plan) + A2(plan), written out explicitly."""
    i, j = _rows(plan)
    nu = len(j)
    if nu == 0:
        return (0, i[0])
    I = lambda p: i[p - 1]  # noqa: E731  1-based helpers
    J = lambda p: j[p - 1]  # noqa: E731
    head = []
    p = nu
    while p >= 2:
        head += [J(p), I(p)]
        p -= 2
    if nu % 2 == 0:
        tail = [I(1), J(1)]
        start = 3
    else:
        tail = [J(1), I(1)]
        start = 2
    for q in range(start, nu, 2):
        tail += [I(q), J(q)]
    return (0,) + tuple(head + tail + [I(nu + 1)])


def union_plans(plan: LoadingPlan) -> LoadingPlan:
    """A plan under which (union tour of the swapped plan, reverse union tour) is feasible."""
    i, j = _rows(plan)
    nu = len(j)
    I = lambda p: i[p - 1]  # noqa: E731
    J = lambda p: j[p - 1]  # noqa: E731
    head = []
    p = nu
    while p >= 2:
        head += [J(p), I(p)]
        p -= 2
    if nu % 2 == 0:
        r1 = head + [I(1)]
        r2 = [J(1)]
        start = 3
    else:
        r1 = head + [J(1)]
        r2 = [I(1)]
        start = 2
    for q in range(start, nu, 2):
        r2 += [I(q), J(q)]
    r2.append(I(nu + 1))
    return LoadingPlan((tuple(r1), tuple(r2)))


@dataclass(frozen=True)
class EvenResult:
    solution: Solution
    base: ApxResult
    plan: LoadingPlan
    swapped: LoadingPlan
    used_swapped: bool


def dapx_even(inst: Instance, mp: Matching | None = None, md: Matching | None = None) -> EvenResult:
    if inst.size % 2:
        raise ValueError("this algorithm needs an even number of vertices (n odd)")
    base = apx_2dtspms(inst, mp, md)
    plan = base.plan
    swapped = swap_first(plan)
    first = base.solution
    second = best_pair_given_plan(inst, swapped)
    if at_least(first.value, second.value, inst.goal):
        return EvenResult(first, base, plan, swapped, False)
    return EvenResult(second, base, plan, swapped, True)
