"""Command line: gen, solve, verify, extremes, bench.

Exit codes: 0 ok, 1 infeasible solution or failed verification, 2 bad
usage or bad input, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .core import InvariantError, validate_instance
from .feasibility import verify_solution
from .fileio import ParseError, emit_instance, emit_solution, fmt_number, parse_solution, read_instance
from .generators import PROFILES, gen_bivalued_tight, gen_metric_tight, gen_random
from .oracle import ORACLE_CAP, OracleTooLarge, differential_ratio, exact_extremes, standard_ratio
from .solvers import ALGOS, TSP_CHOICES, applicable, run_algorithm
from .tsp import TooLarge

log = logging.getLogger("stacktsp")

FAMILIES = PROFILES + ("metric_tight", "bivalued_tight")
BENCH_COLUMNS = ("instance_id", "family", "n", "k", "c", "goal", "algo", "value", "opt", "wor",
                 "std_ratio", "diff_ratio", "wall_ms", "seed")


class UsageError(ValueError):
    pass


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    out = []
    for part in _csv_list(text):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out += range(int(lo), int(hi) + 1)
        else:
            out.append(int(part))
    return out


# --- subcommands -------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.family == "metric_tight":
        if args.c is None:
            raise UsageError("metric_tight needs --c")
        lam = Fraction(args.lam) if args.lam is not None else Fraction(args.k - 1, args.c - 1)
        inst, *_ = gen_metric_tight(lam, args.k, args.c)
    elif args.family == "bivalued_tight":
        lam = Fraction(args.lam if args.lam is not None else "1")
        mu = Fraction(args.mu if args.mu is not None else "0")
        inst = gen_bivalued_tight(lam, mu, args.n_prime)
    else:
        if args.n is None:
            raise UsageError(f"{args.family} needs --n")
        inst = gen_random(args.family, args.n, args.k, args.c, args.seed, args.goal)
    _write(args.out, emit_instance(inst))
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    sol = run_algorithm(inst, args.algo, args.tsp, args.oracle_cap)
    problems = verify_solution(inst, sol)
    if problems:
        raise InvariantError(f"{args.algo} produced an invalid solution: {'; '.join(problems)}")
    _write(args.out, emit_solution(sol))
    if args.out not in (None, "-"):
        print(f"value {fmt_number(sol.value)}")
    return 0


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    with open(args.solution) as fh:
        sol = parse_solution(fh.read())
    problems = verify_solution(inst, sol)
    if problems:
        for p in problems:
            print(f"INVALID: {p}")
        return 1
    print(f"OK value {fmt_number(sol.value)}")
    return 0


def cmd_extremes(args) -> int:
    inst = read_instance(args.instance)
    rep = validate_instance(inst)
    ext = exact_extremes(inst, args.oracle_cap)
    lines = [
        f"flags: {' '.join(rep.flags()) or '-'}",
        f"opt: {fmt_number(ext.opt)}",
        f"wor: {fmt_number(ext.wor)}",
        f"opt_pickup_tsp: {fmt_number(ext.opt_pickup_tsp)}",
        f"opt_delivery_tsp: {fmt_number(ext.opt_delivery_tsp)}",
        f"opt_sigma: {fmt_number(ext.opt_sigma)}",
        f"wor_sigma: {fmt_number(ext.wor_sigma)}",
        f"plans: {ext.plans}",
        f"opt_plan: {ext.opt_solution.plan}",
    ]
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _bench_instance(task):
    """All rows for one generated instance."""
    family, n, k, goal, seed, algos, tsp, oracle_cap = task
    inst = gen_random(family, n, k, None, seed, goal)
    iid = f"{family}-n{n}-k{k}-{goal}-s{seed}"
    try:
        ext = exact_extremes(inst, oracle_cap)
    except OracleTooLarge:
        ext = None
    rows = []
    for algo in algos:
        row = {"instance_id": iid, "family": family, "n": n, "k": k, "c": inst.c, "goal": goal,
               "algo": algo, "seed": seed}
        if applicable(inst, algo) or (algo == "exact" and ext is None):
            row.update(value="NA", opt="NA", wor="NA", std_ratio="NA", diff_ratio="NA", wall_ms="NA")
            rows.append(row)
            continue
        t0 = time.perf_counter()
        sol = run_algorithm(inst, algo, tsp, oracle_cap)
        ms = (time.perf_counter() - t0) * 1000
        if verify_solution(inst, sol):
            raise InvariantError(f"{algo} produced an invalid solution on {iid}")
        row["value"] = fmt_number(sol.value)
        row["wall_ms"] = f"{ms:.1f}"
        if ext is None:
            row.update(opt="NA", wor="NA", std_ratio="NA", diff_ratio="NA")
        else:
            std = standard_ratio(sol.value, ext.opt)
            row.update(opt=fmt_number(ext.opt), wor=fmt_number(ext.wor),
                       std_ratio="NA" if std is None else f"{float(std):.6f}",
                       diff_ratio=f"{float(differential_ratio(sol.value, ext.opt, ext.wor)):.6f}")
        rows.append(row)
    return rows


def bench_rows(families, sizes, k, goals, seeds, algos, tsp, oracle_cap, threads=1):
    tasks = [(f, n, k, g, s, tuple(algos), tsp, oracle_cap)
             for f in families for n in sizes for g in goals for s in seeds]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_bench_instance, tasks))
    else:
        chunks = [_bench_instance(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r["family"], r["n"], r["k"], r["goal"], r["seed"], ALGOS.index(r["algo"])))
    return rows


def cmd_bench(args) -> int:
    families = _csv_list(args.profiles)
    for f in families:
        if f not in PROFILES:
            raise UsageError(f"unknown profile {f!r}")
    algos = _csv_list(args.algos)
    for a in algos:
        if a not in ALGOS:
            raise UsageError(f"unknown algorithm {a!r}")
    goals = _csv_list(args.goals)
    seeds = range(args.seed, args.seed + args.count)
    threads = int(os.environ.get("STACKTSP_THREADS", "1") or 1)
    rows = bench_rows(families, _int_list(args.sizes), args.k, goals, seeds, algos, args.tsp,
                      args.oracle_cap, threads)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(args.out, buf.getvalue())
    return 0


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stacktsp", description="Double TSP with multiple stacks")
    p.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("--family", choices=FAMILIES, default="symmetric")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--c", type=int, help="row capacity (default ceil(n/k))")
    g.add_argument("--goal", choices=("min", "max"), default="min")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--lam", help="tight families: lambda")
    g.add_argument("--mu", help="bivalued_tight: mu")
    g.add_argument("--n-prime", type=int, default=1, help="bivalued_tight: n' (4n' items)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--algo", choices=ALGOS, default="apx2")
    s.add_argument("--tsp", choices=TSP_CHOICES, default="exact")
    s.add_argument("--seed", type=int, default=0, help="accepted for symmetry; every algorithm is deterministic")
    s.add_argument("--oracle-cap", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extremes", help="exact OPT and WOR by exhaustive search")
    e.add_argument("instance")
    e.add_argument("--oracle-cap", type=int, default=None)
    e.add_argument("--out")
    e.set_defaults(func=cmd_extremes)

    b = sub.add_parser("bench", help="CSV of values and ratios over generated instances")
    b.add_argument("--profiles", default="symmetric")
    b.add_argument("--sizes", default="4-6", help="comma list or ranges, e.g. 4,5,7-8")
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--goals", default="min")
    b.add_argument("--algos", default="apx2,reduce-two,reduce-sigma,exact")
    b.add_argument("--tsp", choices=TSP_CHOICES, default="exact")
    b.add_argument("--seed", type=int, default=0, help="first seed")
    b.add_argument("--count", type=int, default=5, help="instances per (profile, size, goal)")
    b.add_argument("--oracle-cap", type=int, default=ORACLE_CAP)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, UsageError, OracleTooLarge, TooLarge, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
