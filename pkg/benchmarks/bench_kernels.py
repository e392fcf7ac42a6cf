"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row times one full tally over all configurations and checks that both
kernels return identical tallies.
"""

import argparse
import time

from lonelybus import _pykernel

try:
    from lonelybus import _ckernel
except ImportError:
    _ckernel = None

CASES = [
    ("first proof", (4, 3)),
    ("first proof", (5, 2)),
    ("second proof r=2", (4, 3, 2)),
    ("second proof r=3", (5, 2, 3)),
]


def best_of(fn, args, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernel is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    print(f"{'case':<18} {'params':<10} {'configs':>8} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for label, params in CASES:
        n, k = params[:2]
        total = (k + 1) ** n * k**n
        name = "tally_theorem1" if len(params) == 2 else "tally_theorem2"
        call = params + (0, total)
        t_py, r_py = best_of(getattr(_pykernel, name), call, 1)
        t_c, r_c = best_of(getattr(_ckernel, name), call, args.repeat)
        assert r_py == r_c, f"kernels disagree on {params}"
        print(f"{label:<18} {str(params):<10} {total:>8} {t_py:>9.3f} {t_c:>9.4f} {t_py / t_c:>7.0f}x")


if __name__ == "__main__":
    main()
