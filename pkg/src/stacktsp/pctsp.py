"""Best pickup or delivery tour for a fixed loading plan.

With the plan fixed, a pickup tour is a merge of the k rows, each read from
rear to front; a delivery tour merges them front to rear.  The DP state is
(how many items of each row are already visited, which row was visited
last), which gives O(k^2 n^k) time.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Instance, InvariantError, LoadingPlan, Solution, Tour


class PlanError(ValueError):
    pass


def _chains(plan: LoadingPlan, n: int, direction: str) -> list[tuple[int, ...]]:
    items = plan.items()
    if sorted(items) != list(range(1, n + 1)):
        raise PlanError("plan must contain every item exactly once")
    rows = [r for r in plan.rows if r]
    if direction == "pickup":
        return rows
    if direction == "delivery":
        return [tuple(reversed(r)) for r in rows]
    raise ValueError(f"direction must be pickup or delivery, got {direction!r}")


def merge_chains(d: Sequence[Sequence], chains: list[tuple[int, ...]], goal: str,
                 stats: dict | None = None) -> tuple[Tour, object]:
    """Optimal closed tour from 0 that visits every chain in its own order.

    Ties between predecessors go to the one whose last chain index is
    smallest (the depot counts as -1), so the result is deterministic.
    """
    k = len(chains)
    lens = [len(ch) for ch in chains]
    total = sum(lens)
    if total == 0:
        return (0,), 0
    lt = (lambda a, b: a < b) if goal == "min" else (lambda a, b: a > b)

    # value[(counts, last)] and parent pointers, filled layer by layer
    start = (tuple([0] * k), -1)
    value = {start: 0}
    parent: dict = {start: None}
    layer = [start]
    for _ in range(total):
        nxt_layer: dict = {}
        for state in layer:
            counts, last = state
            here = 0 if last < 0 else chains[last][counts[last] - 1]
            base = value[state]
            for r in range(k):
                if counts[r] == lens[r]:
                    continue
                v = chains[r][counts[r]]
                cand = base + d[here][v]
                nc = counts[:r] + (counts[r] + 1,) + counts[r + 1:]
                key = (nc, r)
                old = nxt_layer.get(key)
                if old is None or lt(cand, old[0]) or (cand == old[0] and last < old[1][1]):
                    nxt_layer[key] = (cand, state)
        layer = sorted(nxt_layer)
        for key in layer:
            value[key], parent[key] = nxt_layer[key]
    full = tuple(lens)
    best_key, best_val = None, None
    for r in range(k):
        key = (full, r)
        if key not in value:
            continue
        last_v = chains[r][lens[r] - 1]
        cand = value[key] + d[last_v][0]
        if best_val is None or lt(cand, best_val):
            best_key, best_val = key, cand
    if stats is not None:
        stats["states"] = len(value)
    order = []
    key = best_key
    while key is not None and key[1] >= 0:
        counts, r = key
        order.append(chains[r][counts[r] - 1])
        key = parent[key]
    tour = (0,) + tuple(reversed(order))
    if len(tour) != total + 1:
        raise InvariantError("chain merge lost an item")
    return tour, best_val


def best_tour_given_plan(inst: Instance, plan: LoadingPlan, direction: str,
                         goal: str | None = None, stats: dict | None = None) -> tuple[Tour, Fraction]:
    """Best tour of one kind for ``plan``; pass the flipped goal for the worst one."""
    goal = goal or inst.goal
    den, p, dl = inst.scaled
    mat = p if direction == "pickup" else dl
    tour, val = merge_chains(mat, _chains(plan, inst.n, direction), goal, stats)
    return tour, Fraction(val, den)


def best_pair_given_plan(inst: Instance, plan: LoadingPlan, goal: str | None = None) -> Solution:
    """The plan's optimal pickup and delivery tours solved independently."""
    tp, vp = best_tour_given_plan(inst, plan, "pickup", goal)
    td, vd = best_tour_given_plan(inst, plan, "delivery", goal)
    return Solution(plan, tp, td, vp + vd)
