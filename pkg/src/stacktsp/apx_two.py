"""Two-row approximation for symmetric instances with k = 2.

Take an optimal (near-)perfect matching for each matrix.  Their union splits
the vertices into alternating cycles and at most one path.  Each component is
cut in half: the first half goes to row 1 and the second half, read
backwards, to row 2, so every matching edge joins items on consecutive
levels of the two rows.  The depot's component is placed first, at the rear
of both rows.  Finally the best pickup and delivery tours for the resulting
plan are computed exactly.

Deterministic layout: components are ordered by smallest vertex; a cycle
starts at its smallest vertex and heads to its smaller neighbour; a path
starts at its smaller end; the depot's component is walked as a cycle from
0 (a path through 0 is closed up first).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Instance, InvariantError, LoadingPlan, Matching, Solution, normalize_matching
from .matching import optimal_matching
from .pctsp import best_pair_given_plan


@dataclass(frozen=True)
class Component:
    kind: str                # "cycle" or "path"
    order: tuple[int, ...]   # vertex order as laid out


def _adjacency(vertices: Iterable[int], *matchings: Matching) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for mt in matchings:
        for u, v in mt:
            adj[u].append(v)
            adj[v].append(u)
    return adj


def components(vertices: Sequence[int], mp: Matching, md: Matching) -> list[Component]:
    """Components of the union of two matchings, laid out deterministically."""
    adj = _adjacency(vertices, mp, md)
    seen: set[int] = set()
    out = []
    for s in sorted(vertices):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp_set = set(comp)
        ends = sorted(v for v in comp if len(adj[v]) < 2)
        if not ends:
            out.append(Component("cycle", walk_cycle(adj, min(comp_set))))
        else:
            out.append(Component("path", walk_path(adj, ends[0])))
    return out


def walk_cycle(adj: dict[int, list[int]], start: int, towards: int | None = None) -> tuple[int, ...]:
    """Vertices of the cycle through ``start``; first step goes to ``towards``
    (default: the smaller neighbour).  A doubled edge is a 2-cycle."""
    a, b = adj[start]
    if a == b:
        return (start, a)
    nxt = min(a, b) if towards is None else towards
    order = [start]
    prev, cur = start, nxt
    while cur != start:
        order.append(cur)
        x, y = adj[cur]
        prev, cur = cur, (y if x == prev else x)
    return tuple(order)


def walk_path(adj: dict[int, list[int]], start: int) -> tuple[int, ...]:
    order = [start]
    prev = None
    while True:
        nxt = [w for w in adj[order[-1]] if w != prev]
        if not nxt:
            return tuple(order)
        prev = order[-1]
        order.append(nxt[0])


def depot_layout(comp: Component) -> tuple[int, ...]:
    """Order of the depot's component as a cycle starting at 0, without the 0."""
    order = comp.order
    if len(order) == 1:
        return ()
    if comp.kind == "path":
        # close the path up; it becomes a cycle through 0
        adj = {v: [] for v in order}
        for u, v in zip(order, order[1:]):
            adj[u].append(v)
            adj[v].append(u)
        adj[order[0]].append(order[-1])
        adj[order[-1]].append(order[0])
        cyc = walk_cycle(adj, 0)
    else:
        i = order.index(0)
        cyc = order[i:] + order[:i]
        if len(cyc) > 2 and cyc[-1] < cyc[1]:
            cyc = (0,) + tuple(reversed(cyc[1:]))
    return cyc[1:]


def split_halves(seq: Sequence[int], first_gets_extra: bool) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(v1..vm) and (v_last .. v_{m+1}); with an odd count the extra vertex
    goes to the first half when ``first_gets_extra``."""
    m = (len(seq) + 1) // 2 if first_gets_extra else len(seq) // 2
    return tuple(seq[:m]), tuple(reversed(seq[m:]))


def plan_from_components(comps: Sequence[Component], depot: int = 0) -> LoadingPlan:
    row1: list[int] = []
    row2: list[int] = []
    rest = []
    for comp in comps:
        if depot in comp.order:
            a, b = split_halves(depot_layout(comp), first_gets_extra=True)
            row1[:0], row2[:0] = a, b
        else:
            rest.append(comp)
    for comp in rest:
        a, b = split_halves(comp.order, first_gets_extra=False)
        row1.extend(a)
        row2.extend(b)
    return LoadingPlan((tuple(row1), tuple(row2)))


def plan_from_matchings(vertices: Sequence[int], mp: Matching, md: Matching) -> LoadingPlan:
    """Two-row plan built from the components of the two matchings."""
    return plan_from_components(components(vertices, mp, md))


@dataclass(frozen=True)
class ApxResult:
    solution: Solution
    mp: Matching
    md: Matching
    plan: LoadingPlan


def require_two_rows(inst: Instance) -> None:
    if inst.k != 2:
        raise ValueError(f"this algorithm needs k = 2, instance has k = {inst.k}")
    if not inst.symmetric:
        raise ValueError("this algorithm needs symmetric distance matrices")
    need = -(-inst.n // 2)
    if inst.c < need:
        raise ValueError(f"capacity {inst.c} is below ceil(n/2) = {need}")


def apx_2dtspms(inst: Instance, mp: Matching | None = None, md: Matching | None = None) -> ApxResult:
    """Run the matching-based two-row approximation.

    ``mp`` and ``md`` replace the optimal matchings when given (used to replay
    adversarial runs).
    """
    require_two_rows(inst)
    vertices = list(range(inst.size))
    if mp is None:
        mp, _ = optimal_matching(vertices, inst.dP, inst.goal)
    if md is None:
        md, _ = optimal_matching(vertices, inst.dD, inst.goal)
    mp, md = normalize_matching(mp), normalize_matching(md)
    plan = plan_from_matchings(vertices, mp, md)
    if any(len(r) > inst.c for r in plan.rows):
        raise InvariantError(f"plan rows {[len(r) for r in plan.rows]} exceed capacity {inst.c}")
    sol = best_pair_given_plan(inst, plan)
    return ApxResult(sol, mp, md, plan)
