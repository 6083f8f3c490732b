"""Exact counting for unit-mass particles with velocities drawn from {+1, -1}.

With unit masses the diagram points are ``(j, S_j)`` for the partial sums
``S_j`` of the velocities, so the system forms a single cluster exactly when
the walk stays strictly above the chord from the origin to ``(n, S_n)``.
Those walks are counted three ways here: a height dynamic program, a
binomial determinant over a Young shape, and brute-force enumeration of all
``2**n`` velocity assignments through the envelope predictor.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .diagram import unit_cluster_count
from .numerics import binom_plus, ceil_rational, det_bareiss

ENUMERATION_LIMIT = 22
BRUTEFORCE_SIDE_LIMIT = 12
TREND_LIMIT = 30


class DomainError(ValueError):
    pass


class GuardError(DomainError):
    """Input exceeds the size budget of an exhaustive routine."""


@dataclass(frozen=True)
class YoungShape:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise DomainError("a shape needs at least one row")
        if any(r < 0 for r in rows):
            raise DomainError(f"negative row length in {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise DomainError(f"rows must be weakly decreasing, got {rows}")

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class WalkSpec:
    n: int
    c: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("walk length must be positive")
        if abs(self.c) > self.n or (self.n - self.c) % 2:
            raise DomainError(f"endpoint {self.c} unreachable in {self.n} steps")


def endpoints(n: int) -> range:
    """All reachable endpoints ``c = n - 2k``."""
    return range(-n, n + 1, 2)


def young_shape_for(n: int, c: int) -> YoungShape:
    """Largest shape fitting in the box to ``((n-c)/2, (n+c)/2)`` strictly above the chord."""
    WalkSpec(n, c)
    if n < 2 or abs(c) > n - 4:
        raise DomainError(f"c={c} is a boundary endpoint for n={n}; need |c| <= n - 4")
    up = (n + c) // 2
    ratio = Fraction(n - c, n + c)
    return YoungShape(tuple(ceil_rational(ratio * (up - j) - 1) for j in range(1, up)))


def path_matrix(shape: YoungShape) -> list[list[int]]:
    lam = shape.rows
    k = len(lam)
    return [[binom_plus(lam[j] + 1, j - i + 1) for j in range(k)] for i in range(k)]


def count_paths(shape: YoungShape) -> int:
    """North-East paths across the shape, as a binomial determinant."""
    return det_bareiss(path_matrix(shape))


def count_paths_bruteforce(shape: YoungShape) -> int:
    """Same count by walking the lattice points of the diagram directly.

    Rows are drawn top to bottom; a zero row contributes only its left edge,
    so the path climbs through it along ``x = 0``.
    """
    lam = shape.rows
    k = len(lam)
    if k > BRUTEFORCE_SIDE_LIMIT or lam[0] > BRUTEFORCE_SIDE_LIMIT:
        raise GuardError(f"shape {lam} exceeds the {BRUTEFORCE_SIDE_LIMIT}x{BRUTEFORCE_SIDE_LIMIT} budget")
    # widest x reachable on horizontal line y (y = 0 at the bottom)
    width = [lam[k - y - 1] if y < k else lam[0] for y in range(k + 1)]
    ways = [[0] * (lam[0] + 1) for _ in range(k + 1)]
    ways[0][0] = 1
    for y in range(k + 1):
        for x in range(width[y] + 1):
            if x > 0:
                ways[y][x] += ways[y][x - 1]
            if y > 0 and x <= width[y - 1]:
                ways[y][x] += ways[y - 1][x]
    return ways[k][lam[0]]


def ssrw_strict_above_count(spec: WalkSpec) -> int:
    """Walks from 0 to ``c`` in ``n`` steps with ``S_j > (c/n) j`` for 0 < j < n."""
    n, c = spec.n, spec.c
    heights = {0: 1}
    for j in range(1, n + 1):
        step: dict[int, int] = {}
        for h, ways in heights.items():
            for nh in (h + 1, h - 1):
                if 0 < j < n and Fraction(nh) <= Fraction(c * j, n):
                    continue
                step[nh] = step.get(nh, 0) + ways
        heights = step
    return heights.get(c, 0)


def _interior_count(n: int, ups: int) -> int:
    return count_paths(young_shape_for(n, 2 * ups - n))


def one_cluster_probability(n: int) -> Fraction:
    """Exact probability that ``n`` unit particles with fair +-1 velocities end as one cluster.

    Endpoints ``c = +-n`` never qualify and ``c = +-(n-2)`` each admit a single
    walk.  The remaining endpoints are counted by determinants, pairing ``c``
    with ``-c`` (their counts agree) and adding the unpaired ``c = 0`` term for
    even ``n``.
    """
    if n < 2:
        raise DomainError("need at least two particles")
    if n == 2:
        return Fraction(1, 4)
    total = 2
    if n % 2 == 0:
        total += _interior_count(n, n // 2)
    for ups in range(2, (n + 1) // 2):
        total += 2 * _interior_count(n, ups)
    return Fraction(total, 2**n)


def _velocities(n: int, index: int) -> list[int]:
    return [1 if (index >> bit) & 1 else -1 for bit in range(n)]


def _tally(n: int, lo: int, hi: int) -> Counter:
    counts: Counter = Counter()
    for index in range(lo, hi):
        counts[unit_cluster_count(_velocities(n, index))] += 1
    return counts


def _tally_args(args):
    return _tally(*args)


def cluster_count_distribution_exact(n: int, workers: int = 1) -> dict[int, Fraction]:
    """Distribution of the number of final clusters over all ``2**n`` velocity assignments."""
    if n < 1:
        raise DomainError("need at least one particle")
    if n > ENUMERATION_LIMIT:
        raise GuardError(f"n={n} exceeds the enumeration limit {ENUMERATION_LIMIT}")
    total = 2**n
    if workers <= 1:
        counts = _tally(n, 0, total)
    else:
        bounds = [total * w // workers for w in range(workers + 1)]
        chunks = [(n, a, b) for a, b in zip(bounds, bounds[1:])]
        counts = Counter()
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_tally_args, chunks):
                counts.update(part)
    return {k: Fraction(counts[k], total) for k in sorted(counts)}


def one_cluster_probability_bruteforce(n: int, workers: int = 1) -> Fraction:
    if n < 2:
        raise DomainError("need at least two particles")
    return cluster_count_distribution_exact(n, workers).get(1, Fraction(0))


def catalan(k: int) -> int:
    if k < 0:
        raise DomainError("Catalan index must be non-negative")
    return comb(2 * k, k) // (k + 1)


def positive_bridge_probability(n: int) -> tuple[Fraction, Fraction]:
    """``(joint, conditional)`` for a length-``2n`` walk returning to 0 while staying positive.

    ``joint`` is P(S_k > 0 for 0 < k < 2n and S_2n = 0); ``conditional`` is the
    same event given S_2n = 0.
    """
    if n < 1:
        raise DomainError("n must be positive")
    c = catalan(n - 1)
    return Fraction(c, 4**n), Fraction(c, comb(2 * n, n))


@dataclass(frozen=True)
class TrendRow:
    n: int
    probability: Fraction

    @property
    def scaled(self) -> Fraction:
        return self.n * self.probability


def asymptotic_trend_report(n_max: int) -> list[TrendRow]:
    """Exact ``p_n`` for ``2 <= n <= n_max``, for eyeballing how ``n * p_n`` behaves."""
    if n_max > TREND_LIMIT:
        raise GuardError(f"n_max={n_max} exceeds the report budget {TREND_LIMIT}")
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    return [TrendRow(n, one_cluster_probability(n)) for n in range(2, n_max + 1)]
