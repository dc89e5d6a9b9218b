"""Exact optimum-weight perfect and near-perfect matchings.

The weight of an edge {u, v} is ``d[u][v]`` with u < v, so callers should
pass symmetric matrices.  Up to ``DP_LIMIT`` vertices a subset DP gives the
optimum together with a deterministic tie-break: among optimal matchings the
one whose sorted edge list is lexicographically smallest.  Larger inputs go
through networkx's blossom implementation on integer-scaled weights, which is
still exact but breaks ties however blossom happens to.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import Matching, normalize_matching

DP_LIMIT = 22


def _int_weights(vertices: Sequence[int], d, goal: str):
    den = 1
    for a in vertices:
        for b in vertices:
            if a < b:
                den = math.lcm(den, Fraction(d[a][b]).denominator)
    sign = 1 if goal == "min" else -1
    m = len(vertices)
    w = [[0] * m for _ in range(m)]
    for i, a in enumerate(vertices):
        for j, b in enumerate(vertices):
            if i != j:
                u, v = min(a, b), max(a, b)
                w[i][j] = sign * int(Fraction(d[u][v]) * den)
    return w


def _dp_matchings(w: list[list[int]]):
    """Memoised min-weight perfect matching on any even vertex subset (bitmask)."""
    m = len(w)

    @lru_cache(maxsize=None)
    def f(mask: int):
        if mask == 0:
            return 0, None
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        best, arg = None, None
        r = rest
        while r:
            j = (r & -r).bit_length() - 1
            r &= r - 1
            sub = f(rest & ~(1 << j))[0]
            cand = w[low][j] + sub
            if best is None or cand < best:
                best, arg = cand, j
        return best, arg

    def edges(mask: int) -> list[tuple[int, int]]:
        out = []
        while mask:
            low = (mask & -mask).bit_length() - 1
            j = f(mask)[1]
            out.append((low, j))
            mask &= ~((1 << low) | (1 << j))
        return out

    return f, edges, m


def optimal_perfect_matching(vertices: Sequence[int], d, goal: str = "min") -> Matching:
    vertices = sorted(vertices)
    if len(vertices) % 2:
        raise ValueError("perfect matching needs an even number of vertices")
    if not vertices:
        return ()
    if len(vertices) > DP_LIMIT:
        return _blossom(vertices, d, goal, perfect=True)
    f, edges, m = _dp_matchings(_int_weights(vertices, d, goal))
    return normalize_matching((vertices[a], vertices[b]) for a, b in edges((1 << m) - 1))


def optimal_near_perfect_matching(vertices: Sequence[int], d, goal: str = "min") -> tuple[Matching, int]:
    """Best matching covering all but one vertex; returns (matching, exposed vertex)."""
    vertices = sorted(vertices)
    if len(vertices) % 2 == 0:
        raise ValueError("near-perfect matching needs an odd number of vertices")
    if len(vertices) == 1:
        return (), vertices[0]
    if len(vertices) > DP_LIMIT:
        best = None
        for x in vertices:
            rest = [v for v in vertices if v != x]
            mt = _blossom(rest, d, goal, perfect=True)
            val = sum(Fraction(d[u][v]) for u, v in mt)
            key = val if goal == "min" else -val
            if best is None or (key, mt) < best[0]:
                best = ((key, mt), mt, x)
        return best[1], best[2]
    f, edges, m = _dp_matchings(_int_weights(vertices, d, goal))
    full = (1 << m) - 1
    best = None
    for x in range(m):
        mask = full & ~(1 << x)
        val = f(mask)[0]
        mt = normalize_matching((vertices[a], vertices[b]) for a, b in edges(mask))
        if best is None or (val, mt) < (best[0], best[1]):
            best = (val, mt, vertices[x])
    return best[1], best[2]


def optimal_matching(vertices: Sequence[int], d, goal: str = "min") -> tuple[Matching, int | None]:
    """Perfect matching for even vertex sets, near-perfect for odd ones."""
    if len(vertices) % 2 == 0:
        return optimal_perfect_matching(vertices, d, goal), None
    return optimal_near_perfect_matching(vertices, d, goal)


def _blossom(vertices, d, goal, perfect: bool) -> Matching:
    import networkx as nx

    w = _int_weights(vertices, d, goal)
    big = max((abs(x) for row in w for x in row), default=0) + 1
    g = nx.Graph()
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            # maximise big - w, which minimises w among maximum-cardinality matchings
            g.add_edge(i, j, weight=big - w[i][j])
    mt = nx.max_weight_matching(g, maxcardinality=perfect)
    return normalize_matching((vertices[a], vertices[b]) for a, b in mt)
