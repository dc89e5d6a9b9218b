"""Deciding whether a pickup tour and a delivery tour can share a loading plan.

Two items conflict when both tours visit them in the same order: the one
picked up first sits below the other, so it cannot come out first.  Number
the items by pickup rank and write ``perm[a]`` for the position of rank-``a``
item in the *reversed* delivery tour.  Items conflict exactly when they form
an inversion of ``perm``, so a row is an increasing subsequence and the
fewest rows needed is the longest decreasing subsequence.
"""
from __future__ import annotations

from bisect import bisect_left
from functools import lru_cache
from typing import Sequence

from .core import Instance, LoadingPlan, Solution, is_permutation_tour, reverse_tour


def conflict_permutation(pickup: Sequence[int], delivery: Sequence[int]) -> list[int]:
    """perm[a] = rank (1-based) in reversed delivery of the a-th item picked up."""
    rev = reverse_tour(delivery)
    rank = {v: i for i, v in enumerate(rev)}
    return [rank[v] for v in pickup[1:]]


def conflict_edges(pickup: Sequence[int], delivery: Sequence[int]) -> set[tuple[int, int]]:
    """Item pairs visited in the same order by both tours (quadratic, for tests)."""
    pp = {v: i for i, v in enumerate(pickup)}
    dp = {v: i for i, v in enumerate(delivery)}
    items = list(pickup[1:])
    out = set()
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            u, v = items[a], items[b]
            if (pp[u] < pp[v]) == (dp[u] < dp[v]):
                out.add((min(u, v), max(u, v)))
    return out


def _rows_from_piles(pickup, piles: list[list[int]], k: int | None) -> LoadingPlan:
    items = pickup[1:]
    rows = [tuple(items[a] for a in pile) for pile in piles]
    if k is not None:
        rows += [()] * (k - len(rows))
    return LoadingPlan(tuple(rows))


def min_rows_uncapacitated(pickup: Sequence[int], delivery: Sequence[int]) -> tuple[int, LoadingPlan]:
    """Fewest rows any plan needs, with a witness plan (no capacity limit).

    First-fit patience sort: each item goes on the lowest-index row whose top
    it may sit on.  Row tops stay in decreasing order, so the search is a
    binary search and the whole thing runs in O(n log n).
    """
    perm = conflict_permutation(pickup, delivery)
    neg_tops: list[int] = []  # negated tops, increasing
    piles: list[list[int]] = []
    for a, v in enumerate(perm):
        # first pile with top < v  <=>  first neg_top > -v
        idx = bisect_left(neg_tops, -v + 1)
        if idx == len(piles):
            piles.append([a])
            neg_tops.append(-v)
        else:
            piles[idx].append(a)
            neg_tops[idx] = -v
    return len(piles), _rows_from_piles(pickup, piles, None)


def feasible_uncapacitated(pickup, delivery, k: int) -> LoadingPlan | None:
    rows, plan = min_rows_uncapacitated(pickup, delivery)
    return plan.padded(k) if rows <= k else None


def feasible_capacitated(pickup, delivery, k: int, c: int) -> LoadingPlan | None:
    """A plan with at most k rows of at most c items each, or None.

    Search over pickup order; the state is the multiset of (top value, load)
    pairs over the rows, so the table size depends on n and k only through
    the number of such multisets.  Exponential in k, fine for the small k
    this library targets.
    """
    perm = conflict_permutation(pickup, delivery)
    n = len(perm)
    if n > k * c:
        return None
    if c >= n:
        return feasible_uncapacitated(pickup, delivery, k)

    @lru_cache(maxsize=None)
    def solve(a: int, state: tuple[tuple[int, int], ...]):
        # state: sorted (top, load) per row; top 0 means empty
        if a == n:
            return ()
        v = perm[a]
        tried = set()
        for idx, (top, load) in enumerate(state):
            if top < v and load < c and (top, load) not in tried:
                tried.add((top, load))
                nxt = list(state)
                nxt[idx] = (v, load + 1)
                rest = solve(a + 1, tuple(sorted(nxt)))
                if rest is not None:
                    return ((top, load),) + rest
        return None

    start = tuple([(0, 0)] * k)
    choice = solve(0, start)
    solve.cache_clear()
    if choice is None:
        return None
    # replay the choices to build actual rows
    rows: list[list[int]] = [[] for _ in range(k)]
    tops = [(0, 0)] * k
    items = pickup[1:]
    for a, want in enumerate(choice):
        idx = tops.index(want)
        rows[idx].append(items[a])
        tops[idx] = (perm[a], want[1] + 1)
    return LoadingPlan(tuple(tuple(r) for r in rows))


def consistent(plan: LoadingPlan, tour: Sequence[int], direction: str) -> bool:
    """Pickup tours take each row rear-to-front, delivery tours front-to-rear."""
    pos = {v: i for i, v in enumerate(tour)}
    for row in plan.rows:
        seq = [pos[v] for v in row]
        if direction == "pickup":
            if any(a > b for a, b in zip(seq, seq[1:])):
                return False
        elif any(a < b for a, b in zip(seq, seq[1:])):
            return False
    return True


def check_plan(plan: LoadingPlan, n: int, k: int, c: int) -> list[str]:
    bad = []
    if plan.k > k:
        bad.append(f"plan uses {plan.k} rows, only {k} available")
    for r, row in enumerate(plan.rows):
        if len(row) > c:
            bad.append(f"row {r + 1} holds {len(row)} items, capacity is {c}")
    items = plan.items()
    if sorted(items) != list(range(1, n + 1)):
        bad.append("plan does not hold every item exactly once")
    return bad


def verify_solution(inst: Instance, sol: Solution) -> list[str]:
    """Every reason the solution is not a valid answer for ``inst``; empty if valid."""
    bad = check_plan(sol.plan, inst.n, inst.k, inst.c)
    for name, tour in (("pickup", sol.pickup), ("delivery", sol.delivery)):
        if not is_permutation_tour(tour, inst.n):
            bad.append(f"{name} tour is not a permutation of 0..{inst.n} starting at 0")
    if bad:
        return bad
    if not consistent(sol.plan, sol.pickup, "pickup"):
        bad.append("pickup tour breaks the row order of the plan")
    if not consistent(sol.plan, sol.delivery, "delivery"):
        bad.append("delivery tour breaks the row order of the plan")
    value = inst.pair_cost(sol.pickup, sol.delivery)
    if value != sol.value:
        bad.append(f"stated value {sol.value} differs from recomputed {value}")
    return bad
