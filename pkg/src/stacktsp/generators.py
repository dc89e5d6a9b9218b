"""Seeded random instances and the two closed-form tight families."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .core import Instance, LoadingPlan, is_metric

PROFILES = ("general", "symmetric", "metric_symmetric", "bivalued")


def _sym(size: int, draw) -> list[list[Fraction]]:
    d = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            d[i][j] = d[j][i] = draw()
    return d


def _closure(d: list[list[Fraction]]) -> list[list[Fraction]]:
    """Shortest-path closure, which turns any symmetric matrix into a metric."""
    size = len(d)
    d = [row[:] for row in d]
    for m in range(size):
        for i in range(size):
            for j in range(size):
                if d[i][m] + d[m][j] < d[i][j]:
                    d[i][j] = d[i][m] + d[m][j]
    return d


def _points_metric(size: int, rng: random.Random, span: int = 20) -> list[list[Fraction]]:
    pts = [(rng.randint(0, span), rng.randint(0, span)) for _ in range(size)]
    d = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            dist = math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])
            # round up to tenths; rounding can still break the triangle
            # inequality, so the closure below restores it
            d[i][j] = d[j][i] = Fraction(math.ceil(dist * 10), 10)
    return _closure(d)


def gen_random(profile: str, n: int, k: int = 2, c: int | None = None, seed: int = 0,
               goal: str = "min", low: int = 0, high: int = 10,
               bivalues: tuple = (1, 2)) -> Instance:
    """Random instance; the same (profile, sizes, seed) always gives the same matrices.

    ``c`` defaults to the tight capacity ceil(n/k).
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; pick one of {', '.join(PROFILES)}")
    c = -(-n // k) if c is None else c
    rng = random.Random(f"{profile}:{n}:{k}:{c}:{goal}:{seed}")
    size = n + 1
    if profile == "general":
        def mat():
            return [[Fraction(0) if i == j else Fraction(rng.randint(low, high))
                     for j in range(size)] for i in range(size)]
        dP, dD = mat(), mat()
    elif profile == "symmetric":
        dP = _sym(size, lambda: Fraction(rng.randint(low, high)))
        dD = _sym(size, lambda: Fraction(rng.randint(low, high)))
    elif profile == "metric_symmetric":
        dP, dD = _points_metric(size, rng), _points_metric(size, rng)
        if not (is_metric(dP) and is_metric(dD)):
            raise AssertionError("metric generator produced a non-metric matrix")
    else:
        a, b = (Fraction(x) for x in bivalues)
        dP = _sym(size, lambda: a if rng.random() < 0.5 else b)
        dD = _sym(size, lambda: a if rng.random() < 0.5 else b)
    meta = {"family": profile, "seed": seed}
    if profile == "bivalued":
        meta["bivalues"] = f"{bivalues[0]},{bivalues[1]}"
    return Instance(n, k, c, dP, dD, goal, meta)


def gen_metric_tight(lam, k: int, c: int) -> tuple[Instance, LoadingPlan, tuple, tuple]:
    """Family where the single-tour relaxation is far from optimal.

    On the kc+1 vertices 0..kc (indices mod kc+1) the pickup matrix is the
    shortest-path closure of the cycle i -> i+1 with edge length ``lam`` and
    the delivery matrix the closure of the cycle i -> i+c with unit edges.
    Goal is min.  Returns the instance and the known optimal solution: row r
    holds items (r-1)c+1 .. rc, the pickup tour is 0, 1, ..., kc and the
    delivery tour empties the rows one position at a time from the front.
    """
    lam = Fraction(lam)
    size = k * c + 1
    dP = [[lam * min((i - j) % size, (j - i) % size) for j in range(size)] for i in range(size)]
    # position of each vertex along the delivery cycle 0, c, 2c, ... (mod size)
    along = [0] * size
    v = 0
    for step in range(size):
        along[v] = step
        v = (v + c) % size
    dD = [[Fraction(min((along[i] - along[j]) % size, (along[j] - along[i]) % size))
           for j in range(size)] for i in range(size)]
    inst = Instance(k * c, k, c, dP, dD, "min",
                    {"family": "metric_tight", "lambda": str(lam), "k": k, "c": c})
    plan = LoadingPlan(tuple(tuple(range(r * c + 1, (r + 1) * c + 1)) for r in range(k)))
    pickup = tuple(range(size))
    delivery = (0,) + tuple(r * c + pos for pos in range(c, 0, -1) for r in range(k))
    return inst, plan, pickup, delivery


def metric_tight_values(lam, k: int, c: int) -> tuple[Fraction, Fraction]:
    """Closed forms (OPT, best single combined tour) for :func:`gen_metric_tight`."""
    lam = Fraction(lam)
    size = k * c + 1
    return size * (lam + 1), size * min(lam + k, lam * c + 1)


def gen_bivalued_tight(lam, mu, n_prime: int) -> Instance:
    """4n' items, k = 2, c = 2n'; distance ``lam`` on the cycle 0, 1, ..., 4n', 0
    and ``mu`` elsewhere, in both matrices.  Maximise when lam > mu."""
    lam, mu = Fraction(lam), Fraction(mu)
    n = 4 * n_prime
    size = n + 1
    d = [[Fraction(0) if i == j else (lam if (i - j) % size in (1, size - 1) else mu)
          for j in range(size)] for i in range(size)]
    goal = "max" if lam > mu else "min"
    return Instance(n, 2, 2 * n_prime, d, d, goal,
                    {"family": "bivalued_tight", "lambda": str(lam), "mu": str(mu), "n_prime": n_prime})


def bivalued_tight_matchings(n_prime: int) -> tuple[tuple[int, int], ...]:
    return tuple((2 * i - 1, 2 * i) for i in range(1, 2 * n_prime + 1))


def bivalued_tight_plan(n_prime: int) -> LoadingPlan:
    """The adversarial loading of the tight family: consecutive pairs split across rows,
    rows reading 4, 8, ..., 1, 5, ... and 3, 7, ..., 2, 6, ..."""
    n = 4 * n_prime
    r1 = tuple(range(4, n + 1, 4)) + tuple(range(1, n, 4))
    r2 = tuple(range(3, n, 4)) + tuple(range(2, n, 4))
    return LoadingPlan((r1, r2))


def bivalued_tight_values(lam, mu, n_prime: int) -> tuple[Fraction, Fraction]:
    """Closed forms (OPT, value of the adversarial run) for :func:`gen_bivalued_tight`."""
    lam, mu = Fraction(lam), Fraction(mu)
    size = 4 * n_prime + 1
    return 2 * size * lam, (size - 1) * lam + (size + 1) * mu
