"""Instances, tours, loading plans and the goal-directed comparison utility.

Every distance is an exact rational (``fractions.Fraction``).  Hot loops
elsewhere work on the integer matrices from :meth:`Instance.scaled`, which
multiplies both matrices by the least common denominator so that sums stay
exact without paying for Fraction arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Tour = tuple[int, ...]
Matching = tuple[tuple[int, int], ...]

GOALS = ("min", "max")


class InvariantError(RuntimeError):
    """An internal construction produced something it promised not to."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted, use int, str or Fraction")
    return Fraction(x)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


# --- goal-directed comparisons -------------------------------------------------

def better(a, b, goal: str) -> bool:
    """True when ``a`` is strictly better than ``b`` for ``goal``."""
    return a < b if goal == "min" else a > b


def at_least(a, b, goal: str) -> bool:
    """True when ``a`` is at least as good as ``b`` (the ⪰ relation)."""
    return a <= b if goal == "min" else a >= b


def flip(goal: str) -> str:
    return "max" if goal == "min" else "min"


def pick(values: Iterable, goal: str):
    return min(values) if goal == "min" else max(values)


# --- tours ----------------------------------------------------------------------

def reverse_tour(tour: Sequence[int]) -> Tour:
    """(0, i1, ..., in) -> (0, in, ..., i1)."""
    return (tour[0],) + tuple(reversed(tour[1:]))


def tour_cost(d, tour: Sequence[int]):
    """Cost of the closed tour over the matrix ``d``."""
    total = 0
    for a, b in zip(tour, tour[1:]):
        total += d[a][b]
    if len(tour) > 1:
        total += d[tour[-1]][tour[0]]
    return total


def tour_edges(tour: Sequence[int]) -> list[tuple[int, int]]:
    return [(tour[i], tour[(i + 1) % len(tour)]) for i in range(len(tour))]


def is_permutation_tour(tour: Sequence[int], n: int) -> bool:
    return len(tour) == n + 1 and tour[0] == 0 and sorted(tour) == list(range(n + 1))


def tour_square(tour: Sequence[int]) -> Tour:
    """Tour that visits every second vertex: (0, v2, v4, ..., v1, v3, ...).

    Meaningful for tours on an odd number of vertices (even item count).
    """
    items = list(tour[1:])
    return (tour[0],) + tuple(items[1::2]) + tuple(items[0::2])


def matching_weight(d, matching: Iterable[tuple[int, int]]):
    return sum((d[u][v] for u, v in matching), Fraction(0))


def normalize_matching(pairs: Iterable[tuple[int, int]]) -> Matching:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))


def cycle_from_edges(edges: Iterable[tuple[int, int]], start: int = 0) -> Tour | None:
    """Walk an edge multiset that should form one Hamiltonian cycle.

    Returns the vertex sequence starting at ``start`` (direction towards the
    smaller neighbour), or None when the edges do not form a single cycle
    through every vertex they touch.
    """
    adj: dict[int, list[int]] = {}
    count = 0
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
        count += 1
    if not adj or start not in adj:
        return None
    if any(len(nb) != 2 for nb in adj.values()):
        return None
    if count != len(adj):
        return None
    if len(adj) == 2:
        a, b = adj[start]
        return (start, a) if a == b else None
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        if len(order) > len(adj):
            return None
    return tuple(order) if len(order) == len(adj) else None


# --- instances ------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """A DTSPMS instance on vertices 0..n (0 is the depot)."""

    n: int
    k: int
    c: int
    dP: Matrix
    dD: Matrix
    goal: str = "min"
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dP", as_matrix(self.dP))
        object.__setattr__(self, "dD", as_matrix(self.dD))
        if self.goal not in GOALS:
            raise ValueError(f"goal must be min or max, got {self.goal!r}")
        if self.n < 1 or self.k < 1 or self.c < 1:
            raise ValueError("n, k and c must be positive")
        size = self.n + 1
        for name, m in (("dP", self.dP), ("dD", self.dD)):
            if len(m) != size or any(len(r) != size for r in m):
                raise ValueError(f"{name} must be {size}x{size}")
        if self.k * self.c < self.n:
            raise ValueError(f"capacity k*c={self.k * self.c} is below n={self.n}")

    @property
    def size(self) -> int:
        """|V| = n + 1."""
        return self.n + 1

    @property
    def items(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def dS(self) -> Matrix:
        """Combined matrix dS(i, j) = dP(i, j) + dD(j, i)."""
        s = range(self.size)
        return tuple(tuple(self.dP[i][j] + self.dD[j][i] for j in s) for i in s)

    @cached_property
    def scaled(self) -> tuple[int, tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
        """(L, L*dP, L*dD) with L the lcm of all denominators."""
        den = 1
        for m in (self.dP, self.dD):
            for row in m:
                for x in row:
                    den = math.lcm(den, x.denominator)
        p = tuple(tuple(int(x * den) for x in row) for row in self.dP)
        d = tuple(tuple(int(x * den) for x in row) for row in self.dD)
        return den, p, d

    def with_goal(self, goal: str) -> "Instance":
        return Instance(self.n, self.k, self.c, self.dP, self.dD, goal, dict(self.meta))

    def pickup_cost(self, tour: Sequence[int]) -> Fraction:
        return tour_cost(self.dP, tour)

    def delivery_cost(self, tour: Sequence[int]) -> Fraction:
        return tour_cost(self.dD, tour)

    def pair_cost(self, pickup: Sequence[int], delivery: Sequence[int]) -> Fraction:
        return self.pickup_cost(pickup) + self.delivery_cost(delivery)

    def sigma_cost(self, tour: Sequence[int]) -> Fraction:
        """dS(T) = dP(T) + dD(reverse of T)."""
        return self.pickup_cost(tour) + self.delivery_cost(reverse_tour(tour))

    @property
    def symmetric(self) -> bool:
        return is_symmetric(self.dP) and is_symmetric(self.dD)


def is_symmetric(d: Matrix) -> bool:
    size = len(d)
    return all(d[i][j] == d[j][i] for i in range(size) for j in range(i + 1, size))


def is_metric(d: Matrix) -> bool:
    size = len(d)
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            dij = d[i][j]
            for m in range(size):
                if m != i and m != j and d[i][m] + d[m][j] < dij:
                    return False
    return True


@dataclass(frozen=True)
class LoadingPlan:
    """k rows, each listing the items from the rear (loaded first) to the front.

    A row may be empty.  Row order matters to the algorithms that build plans,
    but two plans that differ only by a row permutation describe the same
    loading; :meth:`canonical` gives a form fit for comparison.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def k(self) -> int:
        return len(self.rows)

    def items(self) -> list[int]:
        return [v for r in self.rows for v in r]

    def canonical(self) -> "LoadingPlan":
        full = sorted((r for r in self.rows if r), key=lambda r: r[0])
        empty = [() for r in self.rows if not r]
        return LoadingPlan(tuple(full) + tuple(empty))

    def padded(self, k: int) -> "LoadingPlan":
        if len(self.rows) > k:
            raise ValueError(f"plan has {len(self.rows)} rows, only {k} allowed")
        return LoadingPlan(self.rows + ((),) * (k - len(self.rows)))

    def row_of(self) -> dict[int, tuple[int, int]]:
        """item -> (row index, position within row)."""
        return {v: (r, p) for r, row in enumerate(self.rows) for p, v in enumerate(row)}

    def __str__(self) -> str:
        return " ; ".join(f"r{r + 1}= " + " ".join(map(str, row)) for r, row in enumerate(self.rows))


@dataclass(frozen=True)
class Solution:
    """A loading plan with its pickup and delivery tours."""

    plan: LoadingPlan
    pickup: Tour
    delivery: Tour
    value: Fraction

    @classmethod
    def build(cls, inst: Instance, plan: LoadingPlan, pickup, delivery) -> "Solution":
        pickup, delivery = tuple(pickup), tuple(delivery)
        return cls(plan, pickup, delivery, inst.pair_cost(pickup, delivery))


@dataclass
class ValidationReport:
    violations: list[str]
    symmetric: bool
    metric: bool
    bivalued: bool
    uncapacitated: bool
    tight: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    def flags(self) -> list[str]:
        names = ("symmetric", "metric", "bivalued", "uncapacitated", "tight")
        return [x for x in names if getattr(self, x)]


def validate_instance(inst: Instance) -> ValidationReport:
    """Structural checks plus the property flags the algorithms care about."""
    bad = []
    for name, m in (("dP", inst.dP), ("dD", inst.dD)):
        for i in range(inst.size):
            if m[i][i] != 0:
                bad.append(f"{name}[{i}][{i}] = {m[i][i]} is not zero")
            for j in range(inst.size):
                if m[i][j] < 0:
                    bad.append(f"{name}[{i}][{j}] = {m[i][j]} is negative")
    off = {m[i][j] for m in (inst.dP, inst.dD)
           for i in range(inst.size) for j in range(inst.size) if i != j}
    return ValidationReport(
        violations=bad,
        symmetric=inst.symmetric,
        metric=is_metric(inst.dP) and is_metric(inst.dD),
        bivalued=len(off) <= 2,
        uncapacitated=inst.c >= inst.n,
        tight=inst.c == -(-inst.n // inst.k),
    )
