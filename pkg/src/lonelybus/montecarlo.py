"""Seeded sampling estimates of ``P(L >= r)`` for sizes beyond enumeration.

Streams are counter-based (numpy ``Philox``).  Worker ``w`` of a run seeded
with ``seed`` draws from ``Philox(SeedSequence([seed, w]))``, and trials are
split across workers in contiguous blocks, so a result depends only on
``(n, k, r, trials, seed, workers)``.  Bus choices use
``Generator.integers``, which rejects out-of-range draws instead of reducing
modulo ``k``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .model import InputError, Params, lonely_count, occupancy_from_assignment

Z95 = NormalDist().inv_cdf(0.975)
BATCH = 1 << 16


def make_rng(seed: int, worker: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, worker])))


def sample_lonely_count(n: int, k: int, rng: np.random.Generator) -> int:
    """One allocation of ``n`` passengers to ``k`` buses; its lonely count."""
    Params(n, k)
    buses = rng.integers(1, k + 1, size=n)
    return lonely_count(occupancy_from_assignment(buses.tolist(), k))


def lonely_counts(n: int, k: int, trials: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorised lonely counts for ``trials`` independent allocations."""
    out = np.empty(trials, dtype=np.int64)
    done = 0
    while done < trials:
        size = min(BATCH, trials - done)
        buses = rng.integers(0, k, size=(size, n))
        flat = buses + k * np.arange(size)[:, None]
        loads = np.bincount(flat.ravel(), minlength=size * k).reshape(size, k)
        out[done : done + size] = (loads == 1).sum(axis=1)
        done += size
    return out


def wilson_interval(hits: int, trials: int, z: float = Z95) -> tuple[float, float]:
    phat = hits / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # clamp rounding so that ci_low <= phat <= ci_high holds exactly
    return max(0.0, min(centre - half, phat)), min(1.0, max(centre + half, phat))


@dataclass(frozen=True)
class Estimate:
    point: Fraction
    trials: int
    hits: int
    ci_low: float
    ci_high: float
    seed: int
    workers: int = 1

    @property
    def stderr(self) -> float:
        p = float(self.point)
        return math.sqrt(p * (1 - p) / self.trials)

    def contains(self, value) -> bool:
        return self.ci_low <= float(value) <= self.ci_high


def _worker_trials(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def estimate_tail(n: int, k: int, r: int, trials: int, seed: int, workers: int = 1) -> Estimate:
    Params(n, k, r)
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    if workers < 1:
        raise InputError(f"workers must be >= 1, got {workers}")

    def run(w, count):
        if count == 0:
            return 0
        return int((lonely_counts(n, k, count, make_rng(seed, w)) >= r).sum())

    shares = _worker_trials(trials, workers)
    if workers == 1:
        hits = run(0, shares[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(run, range(workers), shares))
    lo, hi = wilson_interval(hits, trials)
    return Estimate(Fraction(hits, trials), trials, hits, lo, hi, seed, workers)
