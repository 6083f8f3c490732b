"""Seeded Monte Carlo histograms of final cluster counts.

Trial ``t`` draws its velocities from its own Philox4x64-10 stream with key
``(seed, 0)`` and starting counter ``(0, t, 0, 0)``.  Velocity ``j`` is bit
``j % 64`` (least significant first) of raw output word ``j // 64``, with a
set bit meaning ``+1``.  The draws depend only on ``(seed, t)``, so any split
of the trials across workers gives the same histogram.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .diagram import unit_cluster_count

MODELS = ("uniform_pm1",)


@dataclass(frozen=True)
class McConfig:
    n: int
    trials: int
    seed: int = 0
    model: str = "uniform_pm1"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.model not in MODELS:
            raise ValueError(f"unknown velocity model {self.model!r}")


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float


@dataclass(frozen=True)
class McResult:
    histogram: dict[int, int]
    trials: int
    estimates: dict[int, Estimate] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "estimates": {
                str(k): {"p": e.value, "stderr": e.stderr} for k, e in sorted(self.estimates.items())
            },
        }


def trial_velocities(seed: int, trial: int, n: int) -> list[int]:
    gen = np.random.Philox(key=seed, counter=trial << 64)
    words = gen.random_raw(-(-n // 64))
    return [1 if (int(words[j >> 6]) >> (j & 63)) & 1 else -1 for j in range(n)]


def _run_range(args) -> Counter:
    n, seed, lo, hi = args
    counts: Counter = Counter()
    for t in range(lo, hi):
        counts[unit_cluster_count(trial_velocities(seed, t, n))] += 1
    return counts


def binomial_estimate(hits: int, trials: int) -> Estimate:
    p = hits / trials
    return Estimate(p, math.sqrt(p * (1 - p) / trials))


def sample_cluster_counts(config: McConfig, workers: int = 1) -> McResult:
    total = config.trials
    if workers <= 1:
        counts = _run_range((config.n, config.seed, 0, total))
    else:
        bounds = [total * w // workers for w in range(workers + 1)]
        jobs = [(config.n, config.seed, a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
        counts = Counter()
        with ProcessPoolExecutor(min(workers, len(jobs))) as pool:
            for part in pool.map(_run_range, jobs):
                counts.update(part)
    histogram = {k: counts[k] for k in sorted(counts)}
    estimates = {k: binomial_estimate(v, total) for k, v in histogram.items()}
    return McResult(histogram, total, estimates)


def estimate_one_cluster_probability(config: McConfig, workers: int = 1) -> Estimate:
    result = sample_cluster_counts(config, workers)
    return binomial_estimate(result.histogram.get(1, 0), result.trials)
