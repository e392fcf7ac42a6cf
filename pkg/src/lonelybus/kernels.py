"""Enumeration backend selection and partitioned tallying.

The compiled kernel ``_ckernel`` is used when it imports; otherwise the
pure-Python ``_pykernel`` is used.  Set ``LONELYBUS_PURE_PYTHON=1`` to force
the fallback.  Both produce identical tallies.

A run over ``[0, total)`` can be cut into contiguous index ranges handled by
separate worker processes; partial tallies are merged by addition, first
violation indices by minimum and source lists by concatenation in range
order, so the merged result does not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

from . import _pykernel

_backend = _pykernel
if os.environ.get("LONELYBUS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel as _backend  # noqa: F811
    except ImportError:
        pass

IMPLEMENTATION: str = _backend.IMPLEMENTATION


def backend(name: str | None = None):
    """Kernel module by name (``"cython"`` / ``"python"``), default the active one."""
    if name is None:
        return _backend
    if name == "python":
        return _pykernel
    if name == "cython":
        from . import _ckernel

        return _ckernel
    raise ValueError(f"unknown kernel {name!r}")


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    base, extra = divmod(total, parts)
    bounds = []
    lo = 0
    for w in range(parts):
        hi = lo + base + (1 if w < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


VIOLATION_KEYS = frozenset(
    {
        "B_multi",
        "B_outside",
        "B_prime_uncovered",
        "low_m",
        "B_prime_no_C",
        "D_prime_multi",
        "D_prime_uncovered",
        "D_prime_no_E",
        "D_outside",
        "D_cell_count_bad",
    }
)


def _merge_violation(x, y):
    firsts = [f for f in (x[1], y[1]) if f >= 0]
    return [x[0] + y[0], min(firsts) if firsts else -1]


def _add(x, y):
    if isinstance(x, dict):
        out = dict(x)
        for key, val in y.items():
            out[key] = _add(out[key], val) if key in out else val
        return out
    if isinstance(x, list):
        return [_add(a, b) for a, b in zip(x, y)]
    return x + y


def merge_tallies(parts: list[dict], source_key: str) -> dict:
    """Combine partial tallies of contiguous ranges given in range order."""
    merged = None
    sources = []
    for part in parts:
        part = dict(part)
        sources.extend(part.pop(source_key))
        if merged is None:
            merged = part
            continue
        for key, val in part.items():
            if key in VIOLATION_KEYS:
                merged[key] = _merge_violation(merged[key], val)
            elif key == "B_prime_extra":
                merged[key] = [_merge_violation(a, b) for a, b in zip(merged[key], val)]
            else:
                merged[key] = _add(merged[key], val)
    merged[source_key] = sources
    return merged


def _run(kind, args, kernel):
    mod = backend(kernel)
    if kind == 1:
        return mod.tally_theorem1(*args)
    return mod.tally_theorem2(*args)


def _tally(kind, head, total, workers, kernel, source_key):
    ranges = split_range(total, workers)
    jobs = [(kind, head + (lo, hi), kernel) for lo, hi in ranges]
    if len(jobs) == 1:
        parts = [_run(*jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(_run, *zip(*jobs)))
    return merge_tallies(parts, source_key)


def tally_theorem1(n: int, k: int, workers: int = 1, kernel: str | None = None) -> dict:
    total = (k + 1) ** n * k**n
    return _tally(1, (n, k), total, workers, kernel or IMPLEMENTATION, "c1_sources")


def tally_theorem2(n: int, k: int, r: int, workers: int = 1, kernel: str | None = None) -> dict:
    total = (k + 1) ** n * k**n
    return _tally(2, (n, k, r), total, workers, kernel or IMPLEMENTATION, "e_sources")
