import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lonelybus.exact import expected_lonely, tail_prob
from lonelybus.model import InputError
from lonelybus.montecarlo import (
    estimate_tail,
    lonely_counts,
    make_rng,
    sample_lonely_count,
    wilson_interval,
)

GRID = [(n, k, r) for n in (3, 5, 8) for k in (2, 3, 5) for r in (1, 2)]


def test_single_bus_never_lonely():
    rng = make_rng(1)
    assert all(sample_lonely_count(6, 1, rng) == 0 for _ in range(50))


def test_sample_matches_exact_half():
    rng = make_rng(3)
    hits = sum(sample_lonely_count(2, 2, rng) >= 1 for _ in range(20000))
    lo, hi = wilson_interval(hits, 20000)
    assert lo <= 0.5 <= hi


def test_mean_count_near_expectation():
    counts = lonely_counts(5, 4, 100_000, make_rng(11))
    exact = float(expected_lonely(5, 4))
    assert exact == pytest.approx(5 * 0.75**4)
    se = counts.std(ddof=1) / math.sqrt(counts.size)
    assert abs(counts.mean() - exact) < 1.96 * se * 2


def test_vectorised_counts_agree_with_scalar_rule():
    rng = make_rng(5)
    buses = rng.integers(0, 4, size=(200, 6))
    expected = [(np.bincount(row, minlength=4) == 1).sum() for row in buses]
    got = lonely_counts(6, 4, 200, make_rng(5))
    assert got.tolist() == expected


def test_impossible_event():
    est = estimate_tail(2, 1, 1, 1000, seed=0)
    assert est.point == 0 and est.ci_low == 0 and 0 < est.ci_high < 0.01


def test_contains_exact_value():
    est = estimate_tail(3, 2, 1, 100_000, seed=2024)
    assert est.contains(tail_prob(3, 2, 1))


def test_deterministic():
    a = estimate_tail(6, 3, 2, 20000, seed=9, workers=3)
    b = estimate_tail(6, 3, 2, 20000, seed=9, workers=3)
    assert a == b
    assert estimate_tail(6, 3, 2, 20000, seed=10) != estimate_tail(6, 3, 2, 20000, seed=9)


def test_rejects_bad_trials():
    with pytest.raises(InputError):
        estimate_tail(3, 2, 1, 0, seed=1)
    with pytest.raises(InputError):
        estimate_tail(3, 2, 1, 10, seed=1, workers=0)


@given(st.integers(1, 10_000), st.data())
def test_wilson_ordering(trials, data):
    hits = data.draw(st.integers(0, trials))
    lo, hi = wilson_interval(hits, trials)
    assert 0 <= lo <= hits / trials <= hi <= 1


def test_calibration_grid():
    covered = 0
    for i, (n, k, r) in enumerate(GRID):
        est = estimate_tail(n, k, r, 100_000, seed=1000 + i)
        exact = float(tail_prob(n, k, r))
        se = max(est.stderr, 1e-12)
        assert abs(float(est.point) - exact) <= 5 * se or exact in (0.0, 1.0)
        covered += est.contains(exact)
    assert covered >= 0.8 * len(GRID)


def test_monotone_sanity():
    for n in (3, 5, 8):
        for k in (2, 3, 5):
            lo = estimate_tail(n, k, 1, 100_000, seed=7)
            hi = estimate_tail(n, k + 1, 1, 100_000, seed=8)
            combined = math.sqrt(lo.stderr**2 + hi.stderr**2)
            assert float(hi.point) >= float(lo.point) - 3 * combined
