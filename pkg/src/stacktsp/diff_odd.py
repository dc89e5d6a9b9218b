"""Differential approximation for two rows when |V| is odd.

For every vertex x, optimal perfect matchings are computed on V minus x and
one or two plans are built from them, each with x put back in.  The best plan
over all x wins.  Which plans get built depends on the shape of the union of
the two matchings:

``w0_2``          x != 0 and the depot shares a doubled edge with one item
``w0_ge4``        x != 0 and the depot lies on a longer alternating cycle
``depot_multi``   x == 0 and the union has several cycles
``depot_single``  x == 0 and the union is one Hamiltonian cycle on the items

Each case also produces the pair of completions (N, N') and the edge e_x
that the guarantee relies on; :func:`check_construction` tests those
properties and the test suite runs it over every case.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .apx_two import components, require_two_rows, walk_cycle, _adjacency
from .core import (Instance, InvariantError, LoadingPlan, Matching, Solution, at_least, better,
                   cycle_from_edges, normalize_matching, reverse_tour)
from .diff_even import completion_a, completion_a2
from .feasibility import consistent, feasible_capacitated
from .matching import optimal_perfect_matching
from .pctsp import best_pair_given_plan

log = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Construction:
    """Plans and completions built for one removed vertex x."""

    case: str
    x: int
    edge: Edge | None                 # e_x, the chosen edge of F_x
    plan: LoadingPlan                 # holds x when x != 0
    plan2: LoadingPlan
    completion: tuple[Edge, ...]      # N: x has degree 2, everything else degree 1
    completion2: tuple[Edge, ...]     # N'
    detail: dict = field(default_factory=dict, compare=False)
    completion_d: tuple[Edge, ...] | None = None    # delivery side, when it differs from N
    completion2_d: tuple[Edge, ...] | None = None

    def sides(self):
        """((plan, N_P, N_D), (plan', N'_P, N'_D))."""
        return ((self.plan, self.completion, self.completion_d or self.completion),
                (self.plan2, self.completion2, self.completion2_d or self.completion2))


# --- small helpers ----------------------------------------------------------------

def delta(inst: Instance, x: int, i: int, j: int):
    """Extra length, summed over both matrices, of detouring i-j through x."""
    p, d = inst.dP, inst.dD
    return (p[i][x] + p[x][j] - p[i][j]) + (d[i][x] + d[x][j] - d[i][j])


def splice(edges: Sequence[Edge], u: int, v: int, x: int) -> tuple[Edge, ...]:
    """Replace one copy of edge {u, v} by the chain u - x - v."""
    out = list(edges)
    for idx, (a, b) in enumerate(out):
        if {a, b} == {u, v}:
            out[idx:idx + 1] = [(u, x), (x, v)]
            return tuple(out)
    raise InvariantError(f"edge {(u, v)} is not in the completion")


def oriented(adj, anchor: int, index: int) -> tuple[int, ...]:
    """Walk of anchor's cycle rotated so that anchor sits at ``index``."""
    walk = walk_cycle(adj, anchor)
    size = len(walk)
    cut = (size - index) % size
    return walk[cut:] + walk[:cut]


def layout(depot_seq: Sequence[int] | None, cycles: Sequence[Sequence[int]]) -> LoadingPlan:
    """Rows from an oriented depot cycle (without 0) and oriented item cycles."""
    row1: list[int] = []
    row2: list[int] = []
    if depot_seq:
        m = (len(depot_seq) + 1) // 2
        row1 += depot_seq[:m]
        row2 += list(reversed(depot_seq[m:]))
    for seq in cycles:
        m = len(seq) // 2
        row1 += seq[:m]
        row2 += list(reversed(seq[m:]))
    return LoadingPlan((tuple(row1), tuple(row2)))


def depot_sequence(adj, towards: int | None = None) -> tuple[int, ...]:
    return walk_cycle(adj, 0, towards)[1:]


def insert(plan: LoadingPlan, row: int, pos: int, x: int) -> LoadingPlan:
    rows = [list(r) for r in plan.rows]
    rows[row].insert(pos, x)
    return LoadingPlan(tuple(tuple(r) for r in rows))


def tour_fits(plan: LoadingPlan, edges: Sequence[Edge]) -> bool:
    """Do the edges form one cycle through 0 that a pickup tour can follow?"""
    t = cycle_from_edges(edges)
    if t is None:
        return False
    return consistent(plan, t, "pickup") or consistent(plan, reverse_tour(t), "pickup")


def _best_edge(inst: Instance, x: int, pairs) -> Edge:
    best = None
    for i, j in sorted(pairs):
        val = delta(inst, x, i, j)
        if best is None or better(val, best[0], inst.goal):
            best = (val, (i, j))
    return best[1]


def _norm(i: int, j: int) -> Edge:
    return (min(i, j), max(i, j))


# --- case x != 0, depot on a doubled edge -----------------------------------------

def _case_w0_2(inst, x, vx, mp, md, comps, adj) -> Construction:
    a = next(w for w in adj[0])
    others = [c for c in comps if 0 not in c.order]
    pairs = [_norm(0, y) for y in vx if y not in (0, a)]
    if not pairs:
        # only the depot and one item are left: nothing to choose
        plan = LoadingPlan(((a,), (x,)))
        comp = ((a, x), (x, 0))
        return Construction("w0_2", x, None, plan, plan, comp, comp, {"pairs": ()})
    e = _best_edge(inst, x, pairs)
    y = e[1]
    last = next(c for c in others if y in c.order)
    seqs = [c.order for c in others if c is not last]
    m = len(last.order) // 2
    seqs.append(oriented(adj, y, m - 1))
    base = layout((a,), seqs)
    plan = insert(base, 1, len(base.rows[1]), x)
    n1 = splice(completion_a(base), y, 0, x)
    n2 = splice(completion_a2(base), base.rows[1][-1], 0, x)
    return Construction("w0_2", x, e, plan, plan, n1, n2, {"pairs": tuple(pairs), "base": base})


# --- case x != 0, depot on a longer cycle -----------------------------------------

def _q_plan(base: LoadingPlan, m0: int) -> LoadingPlan:
    """Swap rows at every even position 2, 4, ... up to m0 (1-based)."""
    r1, r2 = list(base.rows[0]), list(base.rows[1])
    for p in range(2, m0 + 1, 2):
        r1[p - 1], r2[p - 1] = r2[p - 1], r1[p - 1]
    return LoadingPlan((tuple(r1), tuple(r2)))


def _b_completions(q: LoadingPlan, m0: int) -> tuple[tuple[Edge, ...], tuple[Edge, ...], tuple[int, ...]]:
    """(B, B', cycle Gamma) for the swapped plan."""
    i, j = q.rows
    gamma = tuple(i[:m0]) + tuple(reversed(j[:m0]))
    ring = [(gamma[t], gamma[(t + 1) % len(gamma)]) for t in range(len(gamma))]
    # ring[-1] is (j1, i1); it and every second edge before it go to B
    b = [ring[t] for t in range(len(ring)) if t % 2 == (len(ring) - 1) % 2]
    b2 = [ring[t] for t in range(len(ring)) if t % 2 != (len(ring) - 1) % 2]
    rest = LoadingPlan((i[m0:], j[m0:]))
    b += completion_a(rest)
    b2 += completion_a2(rest)
    return tuple(b), tuple(b2), gamma


def _edge_at(edges: Sequence[Edge], v: int) -> Edge:
    return next(e for e in edges if v in e)


def _placements(plan: LoadingPlan, cap: int):
    for row in (1, 0):
        if len(plan.rows[row]) < cap:
            for pos in range(len(plan.rows[row]) + 1):
                yield row, pos


def _place(q: LoadingPlan, cap: int, x: int, comp, mp, md):
    for row, pos in _placements(q, cap):
        cand = insert(q, row, pos, x)
        if tour_fits(cand, list(mp) + list(comp)) and tour_fits(cand, list(md) + list(comp)):
            return cand
    return None


def _same_row_partner(gamma: Sequence[int], m0: int, a: int) -> int:
    """Neighbour of a on the cycle Gamma that sits in a's own row."""
    t = gamma.index(a)
    size = len(gamma)
    for u in (gamma[(t - 1) % size], gamma[(t + 1) % size]):
        if (gamma.index(u) < m0) == (t < m0):
            return u
    raise InvariantError(f"{a} has no same-row neighbour on the cycle")


def _case_w0_ge4(inst, x, vx, mp, md, comps, adj) -> Construction:
    seq = depot_sequence(adj)
    m0 = (len(seq) - 1) // 2
    others = [c for c in comps if 0 not in c.order]
    q = _q_plan(layout(seq, [c.order for c in others]), m0)
    b, b2, gamma = _b_completions(q, m0)
    inside = set(gamma)
    pairs = [_norm(a, y) for a in gamma for y in vx if y not in inside]
    e = _best_edge(inst, x, pairs)
    a, y = (e[0], e[1]) if e[0] in inside else (e[1], e[0])
    detail = {"pairs": tuple(pairs), "gamma": gamma, "m0": m0}
    if m0 >= 2:
        # x goes next to a on a's row edge of Gamma, and next to y in the
        # other completion; y's component is moved last so that its edge
        # there runs to the depot
        partner = _same_row_partner(gamma, m0, a)
        first_is_b = any(set(f) == {a, partner} for f in b)
        home = next((c for c in others if y in c.order), None)
        if home is not None:
            mh = len(home.order) // 2
            seqs = [c.order for c in others if c is not home]
            seqs.append(oriented(adj, y, mh if first_is_b else mh - 1))
            q = _q_plan(layout(seq, seqs), m0)
            b, b2, gamma = _b_completions(q, m0)
        first, second = (b, b2) if first_is_b else (b2, b)
        n1 = splice(first, a, partner, x)
        s, t = _edge_at(second, y)
        n2 = splice(second, s, t, x)
        p1 = _place(q, inst.c, x, n1, mp, md)
        p2 = _place(q, inst.c, x, n2, mp, md)
        if p1 is not None and p2 is not None:
            return Construction("w0_ge4", x, e, p1, p2, n1, n2,
                                dict(detail, q=q, b=b, b2=b2, route="row-edge"))
    found = search_certificate(inst.size, inst.c, x, mp, md, a, y)
    if found is None:
        raise NoCertificate(f"x={x}: no pair of completions found for edge {e} (m0={m0})")
    (p1, n1, d1), (p2, n2, d2) = found
    return Construction("w0_ge4", x, e, p1, p2, n1, n2, dict(detail, q=q, route="search"),
                        completion_d=d1, completion2_d=d2)


# --- certificate search --------------------------------------------------------------

SEARCH_LIMIT = 8


class NoCertificate(InvariantError):
    pass


def _perfect_matchings(vs: Sequence[int]):
    if not vs:
        yield ()
        return
    a = vs[0]
    for t in range(1, len(vs)):
        rest = vs[1:t] + vs[t + 1:]
        for m in _perfect_matchings(rest):
            yield ((a, vs[t]),) + m


def _rewire(n1, n2, x: int, i: int, j: int, size: int):
    union = list(n1) + list(n2)
    for target in (i, j):
        idx = next((t for t, f in enumerate(union) if set(f) == {x, target}), None)
        if idx is None:
            return None
        union.pop(idx)
    union.append((i, j))
    t = cycle_from_edges(union)
    return t if t is not None and len(t) == size else None


def _pair_plan(pickup, delivery, cap: int):
    for tp in (pickup, reverse_tour(pickup)):
        for td in (delivery, reverse_tour(delivery)):
            plan = feasible_capacitated(tp, td, 2, cap)
            if plan is not None:
                return plan.padded(2)
    return None


def search_certificate(size: int, cap: int, x: int, mp: Matching, md: Matching, i: int, j: int):
    """Two solutions around the edge (i, j), found by exhaustive search.

    Each solution is (plan, pickup completion, delivery completion); x sits
    next to i in both completions of the first and next to j in both of the
    second.  The two pickup completions and the two delivery completions must
    each rewire into a Hamiltonian cycle on V, and those two cycles must form
    a feasible solution themselves.  Used when the direct construction has no
    placement for x; limited to |V| - 1 <= SEARCH_LIMIT.
    """
    vx = [v for v in range(size) if v != x]
    if len(vx) > SEARCH_LIMIT:
        return None
    comps = []
    for r in _perfect_matchings(vx):
        for u, v in r:
            comps.append(splice(r, u, v, x))

    def tours(mt, end):
        out = []
        for n in comps:
            if any(set(f) == {x, end} for f in n):
                t = cycle_from_edges(list(mt) + list(n))
                if t is not None and len(t) == size:
                    out.append((n, t))
        return out

    def solutions(end):
        out = []
        for np_, tp in tours(mp, end):
            for nd, td in tours(md, end):
                plan = _pair_plan(tp, td, cap)
                if plan is not None:
                    out.append((plan, np_, nd))
        return out

    first, second = solutions(i), solutions(j)
    for p1, np1, nd1 in first:
        for p2, np2, nd2 in second:
            hp = _rewire(np1, np2, x, i, j, size)
            if hp is None:
                continue
            hd = _rewire(nd1, nd2, x, i, j, size)
            if hd is None or _pair_plan(hp, hd, cap) is None:
                continue
            return (p1, np1, nd1), (p2, np2, nd2)
    return None


# --- case x == 0, several cycles ----------------------------------------------------

def _case_depot_multi(inst, vx, mp, md, comps, adj) -> Construction:
    members = [set(c.order) for c in comps]
    where = {v: s for s, mem in enumerate(members) for v in mem}
    pairs = [_norm(u, v) for u in vx for v in vx if u < v and where[u] != where[v]]
    e = _best_edge(inst, 0, pairs)
    a, b = e
    half = len(vx) // 2
    first = comps[where[a]]
    last = comps[where[b]]
    mid = [c.order for c in comps if c is not first and c is not last]
    first_seq = oriented(adj, a, 0)
    mb = len(last.order) // 2
    last_seq = oriented(adj, b, mb if half % 2 else mb - 1)
    plan = layout(None, [first_seq] + mid + [last_seq])
    i, j = plan.rows
    L = len(i)
    c1 = [(i[p], j[p + 1]) for p in range(L - 1)] + [(i[L - 1], 0), (0, j[0])]
    c2 = [(j[p], i[p + 1]) for p in range(L - 1)] + [(j[L - 1], 0), (0, i[0])]
    return Construction("depot_multi", 0, e, plan, plan, tuple(c1), tuple(c2), {"pairs": tuple(pairs)})


# --- case x == 0, one Hamiltonian cycle --------------------------------------------

def p_plan(cyc: Sequence[int], i: int) -> LoadingPlan:
    m = len(cyc)
    v = lambda t: cyc[t % m]  # noqa: E731
    h = m // 2
    return LoadingPlan((tuple(v(i + t) for t in range(h)), tuple(v(i - 1 - t) for t in range(h))))


def p_completion(cyc: Sequence[int], i: int) -> tuple[Edge, ...]:
    """Pairs v_{i-r} with v_{i+r}, and v_i with v_{i+m/2}, with 0 spliced on the latter."""
    m = len(cyc)
    v = lambda t: cyc[t % m]  # noqa: E731
    h = m // 2
    edges = [(v(i - r), v(i + r)) for r in range(1, h)] + [(v(i + h), v(i))]
    return splice(edges, v(i + h), v(i), 0)


def q_plan(cyc: Sequence[int], i: int) -> LoadingPlan:
    """Pairs of cycle-consecutive vertices loaded into alternating rows from v_i."""
    m = len(cyc)
    v = lambda t: cyc[t % m]  # noqa: E731
    h = m // 2
    if h % 2:
        q = (m - 2) // 4
        r1 = [v(i + 4 * t + s) for t in range(q) for s in (0, 1)] + [v(i - 2)]
        r2 = [v(i - 1)] + [v(i + 4 * t + 2 + s) for t in range(q) for s in (0, 1)]
    else:
        q = m // 4
        r1 = [v(i + 4 * t + s) for t in range(q - 1) for s in (0, 1)] + [v(i - 2), v(i - 3)]
        r2 = [v(i - 1)] + [v(i + 4 * t + 2 + s) for t in range(q - 1) for s in (0, 1)] + [v(i - 4)]
    return LoadingPlan((tuple(r1), tuple(r2)))


def e3(cyc: Sequence[int], i: int) -> list[Edge]:
    m = len(cyc)
    v = lambda t: cyc[t % m]  # noqa: E731
    return [(v(t), v(t + 3)) for t in range(m) if t % 2 != i % 2]


def q_completion(cyc: Sequence[int], i: int) -> tuple[Edge, ...]:
    m = len(cyc)
    v = lambda t: cyc[t % m]  # noqa: E731
    edges = e3(cyc, i)
    if (m // 2) % 2:
        return splice(edges, v(i - 3), v(i), 0)
    drop = [{v(i - 3), v(i)}, {v(i - 5), v(i - 2)}, {v(i - 7), v(i - 4)}]
    for d in drop:
        idx = next(t for t, e in enumerate(edges) if set(e) == d)
        edges.pop(idx)
    edges += [(v(i - 5), v(i - 3)), (v(i - 7), v(i - 2)), (v(i - 4), v(i))]
    return splice(edges, v(i - 4), v(i), 0)


def case_rows(m: int, i: int, j: int) -> list[tuple[int, tuple[str, int], tuple[str, int]]]:
    """Every row of the case table that covers the ordered index pair (i, j).

    Each entry is (row number, (family, index) for N, (family, index) for N').
    """
    h = m // 2
    diff = (j - i) % m
    odd = (i - j) % 2 == 1
    out = []
    if gcd(diff, m) == 1:
        out.append((1, ("P", i), ("P", j)))
    if h % 6 == 3 and i % 3 != j % 3:
        out.append((2, ("P", i), ("Q", j)))
    if h % 6 in (1, 5) and odd:
        out.append((3, ("Q", i), ("Q", j)))
    if h % 6 == 0 and odd:
        out.append((4, ("Q", i), ("Q", j)))
    if h % 6 == 4 and odd and diff not in (1, m - 1):
        out.append((5, ("Q", i), ("Q", j)))
    if h % 6 == 2 and diff in (1, m - 1):
        out.append((6, ("Q", i), ("Q", j)))
    if h % 6 == 2 and odd and diff % 6 in (1, 5):
        out.append((7, ("Q", (i + 4) % m), ("Q", j)))
    if h % 6 == 2 and odd and diff % 6 in (3, 5):
        out.append((8, ("Q", i), ("Q", (j + 4) % m)))
    return out


def case_row(m: int, i: int, j: int) -> tuple[int, tuple[str, int], tuple[str, int]] | None:
    """First row of the case table that covers (i, j), or None."""
    rows = case_rows(m, i, j)
    return rows[0] if rows else None


def single_cycle_pairs(m: int) -> list[tuple[int, int]]:
    """Index pairs {i, j} covered by some row of the case table."""
    return [(i, j) for i in range(m) for j in range(i + 1, m)
            if case_row(m, i, j) or case_row(m, j, i)]


def _family(cyc, fam: str, i: int):
    if fam == "P":
        return p_plan(cyc, i), p_completion(cyc, i)
    return q_plan(cyc, i), q_completion(cyc, i)


def _case_depot_single(inst, vx, mp, md, comps, adj) -> Construction:
    cyc = comps[0].order
    m = len(cyc)
    index_pairs = single_cycle_pairs(m)
    pairs = sorted({_norm(cyc[i], cyc[j]) for i, j in index_pairs})
    e = _best_edge(inst, 0, pairs)
    pos = {v: t for t, v in enumerate(cyc)}
    i, j = sorted((pos[e[0]], pos[e[1]]))
    row = case_row(m, i, j)
    if row is None:
        i, j = j, i
        row = case_row(m, i, j)
    if row is None:
        raise InvariantError(f"no case row covers indices {(i, j)} for m={m}")
    number, (f1, a1), (f2, a2) = row
    plan, n1 = _family(cyc, f1, a1)
    plan2, n2 = _family(cyc, f2, a2)
    return Construction("depot_single", 0, e, plan, plan2, n1, n2,
                        {"pairs": tuple(pairs), "row": number, "cycle": cyc, "indices": (i, j)})


# --- driver -----------------------------------------------------------------------

def build_construction(inst: Instance, x: int, mp: Matching | None = None,
                       md: Matching | None = None) -> tuple[Construction, Matching, Matching]:
    vx = [v for v in range(inst.size) if v != x]
    if mp is None:
        mp = optimal_perfect_matching(vx, inst.dP, inst.goal)
    if md is None:
        md = optimal_perfect_matching(vx, inst.dD, inst.goal)
    comps = components(vx, mp, md)
    adj = _adjacency(vx, mp, md)
    if x != 0:
        w0 = next(c for c in comps if 0 in c.order)
        if len(w0.order) == 2:
            con = _case_w0_2(inst, x, vx, mp, md, comps, adj)
        else:
            con = _case_w0_ge4(inst, x, vx, mp, md, comps, adj)
    elif len(comps) >= 2:
        con = _case_depot_multi(inst, vx, mp, md, comps, adj)
    else:
        con = _case_depot_single(inst, vx, mp, md, comps, adj)
    for p in (con.plan, con.plan2):
        if any(len(r) > inst.c for r in p.rows):
            raise CapacityOverflow(f"x={x}: rows {[len(r) for r in p.rows]} exceed capacity {inst.c}")
    return con, mp, md


class CapacityOverflow(InvariantError):
    pass


def check_construction(con: Construction, mp: Matching, md: Matching, size: int,
                       cap: int | None = None) -> list[str]:
    """Everything the guarantee needs from one construction; empty when all hold.

    With shared completions the rewired union must be one Hamiltonian cycle
    on V (it and its reverse then form a feasible solution).  With separate
    pickup and delivery completions both rewired unions must be Hamiltonian
    and together feasible under capacity ``cap``.
    """
    bad = []
    x = con.x
    (p1, np1, nd1), (p2, np2, nd2) = con.sides()
    for name, plan, n_p, n_d in (("first", p1, np1, nd1), ("second", p2, np2, nd2)):
        if sorted(plan.items()) != list(range(1, size)):
            bad.append(f"{name} plan does not hold every item once")
            continue
        if cap is not None and any(len(r) > cap for r in plan.rows):
            bad.append(f"{name} plan exceeds capacity {cap}")
        if not tour_fits(plan, list(mp) + list(n_p)):
            bad.append(f"{name} plan: pickup matching plus completion is not a consistent tour")
        if not tour_fits(plan, list(md) + list(n_d)):
            bad.append(f"{name} plan: delivery matching plus completion is not a consistent tour")
    if con.edge is None:
        return bad
    i, j = con.edge
    for a, b in ((i, j), (j, i)):
        hp = _rewire(np1, np2, x, a, b, size)
        if hp is None:
            continue
        if np1 == nd1 and np2 == nd2:
            return bad
        hd = _rewire(nd1, nd2, x, a, b, size)
        if hd is None:
            bad.append("rewired delivery union is not a Hamiltonian cycle on V")
        elif _pair_plan(hp, hd, cap if cap is not None else size) is None:
            bad.append("rewired pickup and delivery cycles do not form a feasible solution")
        return bad
    bad.append("rewired union of the completions is not a Hamiltonian cycle on V")
    return bad


@dataclass(frozen=True)
class OddResult:
    solution: Solution
    x: int | None
    per_x: dict
    constructions: dict
    skipped: tuple


def dapx_odd(inst: Instance) -> OddResult:
    require_two_rows(inst)
    if inst.size % 2 == 0:
        raise ValueError("this algorithm needs an odd number of vertices (n even)")
    best: Solution | None = None
    best_x = None
    per_x = {}
    cons = {}
    skipped = []
    for x in range(inst.size):
        try:
            con, _, _ = build_construction(inst, x)
        except (CapacityOverflow, NoCertificate) as exc:
            log.warning("skipping x=%d: %s", x, exc)
            skipped.append(x)
            continue
        cons[x] = con
        sols = [best_pair_given_plan(inst, con.plan)]
        if con.plan2 != con.plan:
            sols.append(best_pair_given_plan(inst, con.plan2))
        local = sols[0]
        for s in sols[1:]:
            if not at_least(local.value, s.value, inst.goal):
                local = s
        per_x[x] = local.value
        if best is None or not at_least(best.value, local.value, inst.goal):
            best, best_x = local, x
    if best is None:
        from .apx_two import apx_2dtspms

        log.warning("every x was skipped; falling back to the matching plan")
        best = apx_2dtspms(inst).solution
    return OddResult(best, best_x, per_x, cons, tuple(skipped))
