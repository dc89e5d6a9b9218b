"""Double TSP with multiple stacks: exact oracles, approximation algorithms, tools."""
from .apx_two import apx_2dtspms
from .core import Instance, InvariantError, LoadingPlan, Solution, validate_instance
from .diff_even import dapx_even
from .diff_odd import dapx_odd
from .feasibility import feasible_capacitated, verify_solution
from .fileio import emit_instance, emit_solution, parse_instance, parse_solution
from .generators import gen_bivalued_tight, gen_metric_tight, gen_random
from .oracle import exact_extremes
from .pctsp import best_pair_given_plan, best_tour_given_plan
from .reduction import embed_tsp, reduce_sigma, reduce_two_tours
from .solvers import run_algorithm

__all__ = [
    "Instance", "InvariantError", "LoadingPlan", "Solution", "validate_instance",
    "apx_2dtspms", "dapx_even", "dapx_odd", "feasible_capacitated", "verify_solution",
    "emit_instance", "emit_solution", "parse_instance", "parse_solution",
    "gen_bivalued_tight", "gen_metric_tight", "gen_random", "exact_extremes",
    "best_pair_given_plan", "best_tour_given_plan", "embed_tsp", "reduce_sigma",
    "reduce_two_tours", "run_algorithm",
]
__version__ = "0.1.0"
