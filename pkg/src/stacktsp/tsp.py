"""Single-vehicle TSP solvers on a rational distance matrix.

``exact_dp`` is Held-Karp over subsets, vectorised with numpy one popcount
layer at a time.  Distances are scaled to integers first; int64 is used when
the largest possible tour fits comfortably, Python ints (object arrays)
otherwise, so the answer is exact either way.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Tour, is_metric, is_symmetric, tour_cost

EXACT_CAP = 18
METHODS = ("exact_dp", "nearest_neighbor", "double_tree_metric", "greedy_max")


class TooLarge(ValueError):
    pass


def scale_matrix(d) -> tuple[int, list[list[int]]]:
    den = 1
    for row in d:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    return den, [[int(Fraction(x) * den) for x in row] for row in d]


def _held_karp(w: list[list[int]]) -> Tour:
    """Minimum tour on integer weights; ties go to the smallest predecessor."""
    size = len(w)
    if size <= 2:
        return tuple(range(size))
    m = size - 1  # vertices 1..size-1 map to bits 0..m-1
    bound = sum(max(abs(x) for x in row) for row in w) + 1
    if bound < 2 ** 60:
        dtype, inf = np.int64, np.int64(2 ** 61)
    else:
        dtype, inf = object, bound * 4
    W = np.array(w, dtype=dtype)
    nmask = 1 << m
    dp = np.full((nmask, m), inf, dtype=dtype)
    par = np.full((nmask, m), -1, dtype=np.int16)
    for j in range(m):
        dp[1 << j, j] = W[0, j + 1]
    masks = np.arange(nmask)
    pop = np.zeros(nmask, dtype=np.int64)
    for b in range(m):
        pop += (masks >> b) & 1
    inner = W[1:, 1:]
    for t in range(2, m + 1):
        layer = masks[pop == t]
        for j in range(m):
            sub = layer[(layer >> j) & 1 == 1]
            prev = sub ^ (1 << j)
            cand = dp[prev] + inner[:, j][None, :]
            arg = np.argmin(cand, axis=1)
            dp[sub, j] = cand[np.arange(len(sub)), arg]
            par[sub, j] = arg
    full = nmask - 1
    close = dp[full] + W[1:, 0]
    last = int(np.argmin(close))
    order = []
    mask = full
    while last >= 0:
        order.append(last + 1)
        p = int(par[mask, last])
        mask ^= 1 << last
        last = p if mask else -1
    return (0,) + tuple(reversed(order))


def exact_dp(d, goal: str = "min", cap: int = EXACT_CAP) -> Tour:
    if len(d) > cap:
        raise TooLarge(f"exact DP is capped at {cap} vertices, got {len(d)}")
    _, w = scale_matrix(d)
    if goal == "max":
        w = [[-x for x in row] for row in w]
    return _held_karp(w)


def nearest_neighbor(d, goal: str = "min") -> Tour:
    size = len(d)
    left = set(range(1, size))
    tour = [0]
    while left:
        here = tour[-1]
        if goal == "min":
            nxt = min(left, key=lambda v: (d[here][v], v))
        else:
            nxt = min(left, key=lambda v: (-d[here][v], v))
        tour.append(nxt)
        left.remove(nxt)
    return tuple(tour)


def double_tree_metric(d, goal: str = "min") -> Tour:
    """Preorder walk of a minimum spanning tree: at most twice optimal on metric input."""
    if goal != "min":
        raise ValueError("double tree is a minimisation heuristic")
    size = len(d)
    if size <= 2:
        return tuple(range(size))
    # Prim from the depot, symmetric weights assumed
    in_tree = [False] * size
    best = [None] * size
    link = [-1] * size
    best[0] = 0
    children: dict[int, list[int]] = {v: [] for v in range(size)}
    for _ in range(size):
        u = min((v for v in range(size) if not in_tree[v] and best[v] is not None),
                key=lambda v: (best[v], v))
        in_tree[u] = True
        if link[u] >= 0:
            children[link[u]].append(u)
        for v in range(size):
            if not in_tree[v] and (best[v] is None or d[u][v] < best[v]):
                best[v], link[v] = d[u][v], u
    order, stack = [], [0]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(sorted(children[u], reverse=True))
    return tuple(order)


def greedy_max(d, goal: str = "max") -> Tour:
    """Greedy edge insertion: best edges first, skipping degree-3 and early cycles.

    Best means heaviest when maximising and lightest when minimising.
    """
    size = len(d)
    if size <= 2:
        return tuple(range(size))
    edges = [(d[u][v], u, v) for u in range(size) for v in range(u + 1, size)]
    edges.sort(key=lambda e: (e[0] if goal == "min" else -e[0], e[1], e[2]))
    deg = [0] * size
    comp = list(range(size))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    adj: dict[int, list[int]] = {v: [] for v in range(size)}
    taken = 0
    for _, u, v in edges:
        if taken == size - 1:
            break
        if deg[u] == 2 or deg[v] == 2 or find(u) == find(v):
            continue
        comp[find(u)] = find(v)
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
        taken += 1
    # the edges form one Hamiltonian path; walk it and rotate to the depot
    ends = [v for v in range(size) if deg[v] < 2]
    path = [ends[0]]
    prev = -1
    while len(path) < size:
        cur = path[-1]
        nxt = next(x for x in adj[cur] if x != prev)
        prev = cur
        path.append(nxt)
    i = path.index(0)
    return tuple(path[i:] + path[:i])


def tsp_solve(d, method: str = "exact_dp", goal: str = "min", cap: int = EXACT_CAP) -> tuple[Tour, Fraction]:
    if method == "exact_dp":
        tour = exact_dp(d, goal, cap)
    elif method == "nearest_neighbor":
        tour = nearest_neighbor(d, goal)
    elif method == "double_tree_metric":
        if not (is_symmetric(d) and is_metric(d)):
            raise ValueError("double tree needs a symmetric metric matrix")
        tour = double_tree_metric(d, goal)
    elif method == "greedy_max":
        tour = greedy_max(d, goal)
    else:
        raise ValueError(f"unknown TSP method {method!r}")
    return tour, Fraction(tour_cost(d, tour))


def brute_force_tsp(d, goal: str = "min") -> tuple[Tour, Fraction]:
    """Enumerate every tour; only for checking the others on tiny inputs."""
    from itertools import permutations

    size = len(d)
    best = None
    for perm in permutations(range(1, size)):
        tour = (0,) + perm
        val = tour_cost(d, tour)
        if best is None or (val < best[1] if goal == "min" else val > best[1]):
            best = (tour, val)
    return best[0], Fraction(best[1])


def tsp_cost(d, tour: Sequence[int]) -> Fraction:
    return Fraction(tour_cost(d, tour))
