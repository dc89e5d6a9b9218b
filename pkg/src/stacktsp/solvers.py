"""One entry point for every algorithm, keyed by its command-line name."""
from __future__ import annotations

from .apx_two import apx_2dtspms
from .core import Instance, Solution
from .diff_even import dapx_even
from .diff_odd import dapx_odd
from .oracle import exact_extremes
from .reduction import reduce_sigma, reduce_two_tours
from .tsp import EXACT_CAP

ALGOS = ("apx2", "dapx2", "dapx-odd", "reduce-two", "reduce-sigma", "exact")
TSP_CHOICES = ("exact", "nn", "double-tree", "greedy-max")


def applicable(inst: Instance, algo: str) -> str | None:
    """Why ``algo`` cannot run on ``inst``, or None when it can."""
    if algo in ("apx2", "dapx2", "dapx-odd"):
        if inst.k != 2:
            return "needs k = 2"
        if not inst.symmetric:
            return "needs symmetric matrices"
        if inst.c < -(-inst.n // 2):
            return "needs c >= ceil(n/2)"
        if algo == "dapx2" and inst.size % 2:
            return "needs an even number of vertices; use dapx-odd"
        if algo == "dapx-odd" and inst.size % 2 == 0:
            return "needs an odd number of vertices; use dapx2"
    if algo not in ALGOS:
        return f"unknown algorithm {algo!r}"
    return None


def run_algorithm(inst: Instance, algo: str, tsp: str = "exact", oracle_cap: int | None = None,
                  tsp_cap: int = EXACT_CAP) -> Solution:
    why = applicable(inst, algo)
    if why:
        raise ValueError(f"{algo}: {why}")
    if algo == "apx2":
        return apx_2dtspms(inst).solution
    if algo == "dapx2":
        return dapx_even(inst).solution
    if algo == "dapx-odd":
        return dapx_odd(inst).solution
    if algo == "reduce-two":
        return reduce_two_tours(inst, tsp, tsp_cap)
    if algo == "reduce-sigma":
        return reduce_sigma(inst, tsp, tsp_cap)
    return exact_extremes(inst, oracle_cap).opt_solution
