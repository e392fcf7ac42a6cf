"""Exact law of the lonely-passenger count, without enumerating allocations.

The counting kernel is a bus-by-bus dynamic programme: ``W(p, b, s)`` is the
number of maps from ``p`` labelled passengers to ``b`` buses with exactly
``s`` singleton buses, and

    W(p, b, s) = sum_j C(p, j) * W(p - j, b - 1, s - [j == 1])

with ``W(0, 0, 0) = 1`` and ``W(p, 0, s) = 0`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .model import InputError, Params


@lru_cache(maxsize=None)
def singleton_ways(n: int, k: int) -> tuple[int, ...]:
    """``W[s]`` for ``s = 0..n``: maps ``[n] -> [k]`` with exactly ``s`` singleton buses."""
    if n < 0 or k < 0:
        raise InputError(f"singleton_ways needs n, k >= 0, got n={n}, k={k}")
    # layer[p][s] = W(p, b, s) for the current number of buses b
    layer = [[0] * (n + 1) for _ in range(n + 1)]
    layer[0][0] = 1
    for _ in range(k):
        nxt = [[0] * (n + 1) for _ in range(n + 1)]
        for p in range(n + 1):
            row = nxt[p]
            for j in range(p + 1):
                ways = comb(p, j)
                prev = layer[p - j]
                bump = 1 if j == 1 else 0
                for s in range(n + 1 - bump):
                    if prev[s]:
                        row[s + bump] += ways * prev[s]
        layer = nxt
    return tuple(layer[n])


@dataclass(frozen=True)
class LonelyPmf:
    n: int
    k: int
    mass: tuple[Fraction, ...]

    def __getitem__(self, s: int) -> Fraction:
        return self.mass[s]

    def support(self) -> dict[int, Fraction]:
        return {s: p for s, p in enumerate(self.mass) if p}

    def tail(self, r: int) -> Fraction:
        return sum(self.mass[r:], Fraction(0))

    def mean(self) -> Fraction:
        return sum((s * p for s, p in enumerate(self.mass)), Fraction(0))


def exact_pmf(n: int, k: int) -> LonelyPmf:
    Params(n, k)
    total = k**n
    return LonelyPmf(n, k, tuple(Fraction(w, total) for w in singleton_ways(n, k)))


def tail_prob(n: int, k: int, r: int) -> Fraction:
    """``P(L >= r)`` for ``n`` passengers on ``k`` buses."""
    Params(n, k, r)
    return exact_pmf(n, k).tail(r)


def expected_lonely(n: int, k: int) -> Fraction:
    """Closed form ``n (1 - 1/k)^(n-1)`` of the mean lonely count."""
    Params(n, k)
    return n * (1 - Fraction(1, k)) ** (n - 1)


@dataclass(frozen=True)
class DominanceEntry:
    k: int
    r: int
    p_k: Fraction
    p_k1: Fraction

    @property
    def holds(self) -> bool:
        return self.p_k1 >= self.p_k

    @property
    def strict(self) -> bool:
        return self.p_k1 > self.p_k

    @property
    def verdict(self) -> str:
        return ">" if self.strict else (">=" if self.holds else "<")


@dataclass(frozen=True)
class DominanceReport:
    n: int
    k_max: int
    entries: tuple[DominanceEntry, ...]

    @property
    def passed(self) -> bool:
        # weak everywhere, strict at r = 1
        return all(e.holds for e in self.entries) and all(
            e.strict for e in self.entries if e.r == 1
        )

    def entry(self, k: int, r: int) -> DominanceEntry:
        return self.entries[(k - 1) * self.n + (r - 1)]


def dominance_report(n: int, k_max: int) -> DominanceReport:
    Params(n, k_max)
    pmfs = {k: exact_pmf(n, k) for k in range(1, k_max + 2)}
    entries = tuple(
        DominanceEntry(k, r, pmfs[k].tail(r), pmfs[k + 1].tail(r))
        for k in range(1, k_max + 1)
        for r in range(1, n + 1)
    )
    return DominanceReport(n, k_max, entries)
