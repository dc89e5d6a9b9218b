"""Solutions built from plain TSP tours, and the matrix transforms around them.

A tour T together with its reverse is always feasible: load the items in
pickup order into consecutive blocks of c, one block per row, and every row
is emptied in exactly the reverse order.  Both reductions below use that.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Instance, LoadingPlan, Matrix, Solution, as_matrix, at_least, is_symmetric, reverse_tour
from .tsp import EXACT_CAP, tsp_solve

# short names used on the command line
TSP_ALIASES = {
    "exact": "exact_dp",
    "nn": "nearest_neighbor",
    "double-tree": "double_tree_metric",
    "greedy-max": "greedy_max",
}


def resolve_method(name: str) -> str:
    return TSP_ALIASES.get(name, name)


def block_plan(tour: Sequence[int], k: int, c: int) -> LoadingPlan:
    """Items in tour order, cut into rows of c."""
    items = list(tour[1:])
    rows = tuple(tuple(items[r * c:(r + 1) * c]) for r in range(k))
    return LoadingPlan(rows)


def reverse_pair(inst: Instance, tour: Sequence[int]) -> Solution:
    """(T, T^-) with the block plan."""
    tour = tuple(tour)
    return Solution.build(inst, block_plan(tour, inst.k, inst.c), tour, reverse_tour(tour))


def reduce_two_tours(inst: Instance, method: str = "exact_dp", cap: int = EXACT_CAP) -> Solution:
    """Best of (T_P, T_P^-) and (T_D^-, T_D) for tours solved on each matrix alone."""
    method = resolve_method(method)
    tp, _ = tsp_solve(inst.dP, method, inst.goal, cap)
    td, _ = tsp_solve(inst.dD, method, inst.goal, cap)
    first = reverse_pair(inst, tp)
    second = reverse_pair(inst, reverse_tour(td))
    return first if at_least(first.value, second.value, inst.goal) else second


def reduce_sigma(inst: Instance, method: str = "exact_dp", cap: int = EXACT_CAP) -> Solution:
    """(T, T^-) for a tour T on the combined matrix; its value is dS(T)."""
    method = resolve_method(method)
    t, _ = tsp_solve(inst.dS, method, inst.goal, cap)
    return reverse_pair(inst, t)


def differential_transforms(d) -> tuple[Matrix, Matrix, Fraction, Fraction]:
    """(d1, d2, d_max, d_min) with d1 = d_max - d and d2 = d + d_max - 2 d_min off the diagonal.

    For every tour T on |V| vertices, d1(T) = |V| d_max - d(T) and
    d2(T) = d(T) + |V| (d_max - 2 d_min); d2 is always metric.
    """
    d = as_matrix(d)
    if not is_symmetric(d):
        raise ValueError("differential transforms need a symmetric matrix")
    size = len(d)
    off = [d[i][j] for i in range(size) for j in range(size) if i != j]
    if not off:
        raise ValueError("matrix needs at least two vertices")
    hi, lo = max(off), min(off)
    d1 = tuple(tuple(Fraction(0) if i == j else hi - d[i][j] for j in range(size)) for i in range(size))
    d2 = tuple(tuple(Fraction(0) if i == j else d[i][j] + hi - 2 * lo for j in range(size))
               for i in range(size))
    return d1, d2, hi, lo


def embed_tsp(d, k: int, c: int, goal: str = "min") -> Instance:
    """DTSPMS instance with dP = d/2 and dD(i, j) = d(j, i)/2.

    For any tour T the pair (T, T^-) is then worth exactly d(T).
    """
    d = as_matrix(d)
    size = len(d)
    if k * c < size - 1:
        raise ValueError(f"capacity k*c={k * c} is below the {size - 1} items")
    dP = [[d[i][j] / 2 for j in range(size)] for i in range(size)]
    dD = [[d[j][i] / 2 for j in range(size)] for i in range(size)]
    return Instance(size - 1, k, c, dP, dD, goal, {"family": "embedded_tsp"})

