"""Brute-force oracles, written from the definitions without package code."""

import itertools
from collections import Counter


def lonely_histogram(n, k):
    """Counts of the lonely number over all k**n allocations."""
    hist = Counter()
    for buses in itertools.product(range(k), repeat=n):
        loads = Counter(buses)
        hist[sum(1 for b in range(k) if loads[b] == 1)] += 1
    return hist


def _configs(n, k):
    for a in itertools.product(range(1, k + 2), repeat=n):
        X = {i: a.count(i) for i in range(1, k + 2)}
        for Y in itertools.product(range(1, k + 1), repeat=n):
            yield a, X, (None,) + Y


def _after(X, Y, k):
    Xp = {i: X[i] for i in range(1, k + 1)}
    for j in range(1, X[k + 1] + 1):
        Xp[Y[j]] += 1
    return Xp


def _singles(loads):
    return sum(1 for v in loads.values() if v == 1)


def theorem1_counts(n, k):
    c = Counter()
    for a, X, Y in _configs(n, k):
        Xp = _after(X, Y, k)
        inA, inAp = _singles(X) > 0, _singles(Xp) > 0
        c["A"] += inA
        c["A_prime"] += inAp
        c["gain"] += inA and not inAp
        c["loss"] += inAp and not inA
        for m in range(2, n + 1):
            if X[k + 1] == 1 and X[Y[1]] == m - 1 and all(
                X[i] != 1 for i in range(1, k + 2) if i not in (Y[1], k + 1)
            ):
                c["B", m] += 1
            if X[k + 1] == m and all(X[i] != 1 for i in range(1, k + 1)) and any(
                X[Y[j]] == 0 for j in range(1, m + 1)
            ):
                c["Bp", m] += 1
                for i in range(1, m + 1):
                    if X[Y[i]] == 0:
                        c["C", m, i] += 1
    return c


def theorem2_counts(n, k, r):
    c = Counter()
    for a, X, Y in _configs(n, k):
        Xp = _after(X, Y, k)
        inA, inAp = _singles(X) >= r, _singles(Xp) >= r
        c["A_r"] += inA
        c["A_prime_r"] += inAp
        c["gain"] += inA and not inAp
        c["loss"] += inAp and not inA
        m = X[k + 1]
        ell = sum(1 for i in range(1, k + 1) if X[i] == 1)
        if m >= 2 and 0 < r - ell <= m:
            s_ok = [
                s for s in range(1, k + 1)
                if X[s] == 0 and sum(1 for j in range(1, m + 1) if Y[j] == s) == 1
            ]
            ok = len(s_ok) >= r - ell
            if len(s_ok) == r - ell and any(X[Y[j]] == 1 for j in range(1, m + 1)):
                ok = False
            if ok:
                c["Dp", m, ell] += 1
                if all(Y[j] in s_ok for j in range(1, r - ell + 1)):
                    c["E_head", m, ell] += 1
        J = next((j for j in range(1, n + 1) if X[Y[j]] != 1), 0)
        if X[k + 1] == 1 and ell in (r - 1, r) and J > 1 and len(set(Y[1:J])) == J - 1:
            c["D"] += 1
            cell = (J + X[Y[J]], r - J) if ell == r - 1 else (J, r - J + 1)
            c[("D_cell",) + cell] += 1
    return c
