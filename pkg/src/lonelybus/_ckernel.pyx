# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Walks configurations ``lo <= index < hi`` with an odometer over the
assignment digits (0..k) and target digits (0..k-1), recomputing the
initial loads only when the assignment changes.  Output layout is identical
to ``_pykernel``.
"""

from libc.stdlib cimport calloc, free

ctypedef long long i64
ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(u64)

IMPLEMENTATION = "cython"


cdef inline void _hit(i64* cnt, i64* first, i64 idx):
    if cnt[0] == 0:
        first[0] = idx
    cnt[0] += 1


cdef void _decode(i64 idx, int n, int k, int* a, int* y):
    cdef int p
    cdef i64 kn = 1
    for p in range(n):
        kn *= k
    cdef i64 a_rank = idx // kn
    cdef i64 y_rank = idx % kn
    for p in range(n - 1, -1, -1):
        a[p] = <int>(a_rank % (k + 1))
        a_rank //= (k + 1)
        y[p] = <int>(y_rank % k)
        y_rank //= k


cdef inline bint _advance(int n, int k, int* a, int* y):
    """Step the odometer; returns True when the assignment digits changed."""
    cdef int p = n - 1
    while p >= 0:
        y[p] += 1
        if y[p] < k:
            return False
        y[p] = 0
        p -= 1
    p = n - 1
    while p >= 0:
        a[p] += 1
        if a[p] <= k:
            return True
        a[p] = 0
        p -= 1
    return True


cdef inline void _loads(int n, int k, int* a, int* X):
    cdef int i
    for i in range(k + 1):
        X[i] = 0
    for i in range(n):
        X[a[i]] += 1


def tally_theorem1(int n, int k, i64 lo, i64 hi):
    cdef int* a = <int*>calloc(n, sizeof(int))
    cdef int* y = <int*>calloc(n, sizeof(int))
    cdef int* X = <int*>calloc(k + 1, sizeof(int))
    cdef int* Xp = <int*>calloc(k, sizeof(int))
    cdef i64* B = <i64*>calloc(n + 1, sizeof(i64))
    cdef i64* Bp = <i64*>calloc(n + 1, sizeof(i64))
    cdef i64* C = <i64*>calloc((n + 1) * (n + 1), sizeof(i64))
    cdef i64* extra_cnt = <i64*>calloc(n + 1, sizeof(i64))
    cdef i64* extra_first = <i64*>calloc(n + 1, sizeof(i64))
    cdef i64 cA = 0, cAp = 0, cGain = 0, cLoss = 0
    cdef i64 multi_c = 0, multi_f = -1, out_c = 0, out_f = -1
    cdef i64 unc_c = 0, unc_f = -1, low_c = 0, low_f = -1, noc_c = 0, noc_f = -1
    cdef list c1_sources = []
    cdef i64 idx
    cdef int i, j, m, m0 = 0, singles_k = 0, lp, nb, bpm, zeros, xy0
    cdef bint inA, inAp, gain, loss, fresh = True
    try:
        for m in range(n + 1):
            extra_first[m] = -1
        if lo < hi:
            _decode(lo, n, k, a, y)
        idx = lo
        while idx < hi:
            if fresh:
                _loads(n, k, a, X)
                m0 = X[k]
                singles_k = 0
                for i in range(k):
                    if X[i] == 1:
                        singles_k += 1
                fresh = False
            inA = singles_k > 0 or m0 == 1
            for i in range(k):
                Xp[i] = X[i]
            for j in range(m0):
                Xp[y[j]] += 1
            lp = 0
            for i in range(k):
                if Xp[i] == 1:
                    lp += 1
            inAp = lp > 0
            gain = inA and not inAp
            loss = inAp and not inA
            cA += inA
            cAp += inAp
            cGain += gain
            cLoss += loss

            # B_m, each m evaluated separately
            nb = 0
            xy0 = X[y[0]]
            for m in range(2, n + 1):
                if m0 == 1 and xy0 == m - 1 and singles_k - (1 if xy0 == 1 else 0) == 0:
                    nb += 1
                    B[m] += 1
            if nb > 1:
                _hit(&multi_c, &multi_f, idx)
            if nb > 0 and not gain:
                _hit(&out_c, &out_f, idx)

            # B'_m and C_{m,i}
            bpm = 0
            for m in range(2, n + 1):
                if m0 == m and singles_k == 0:
                    zeros = 0
                    for j in range(m):
                        if X[y[j]] == 0:
                            zeros += 1
                    if zeros > 0:
                        bpm = m
                        Bp[m] += 1
                        if not loss:
                            _hit(&extra_cnt[m], &extra_first[m], idx)
                        for j in range(m):
                            if X[y[j]] == 0:
                                C[m * (n + 1) + j + 1] += 1
                        if X[y[0]] == 0:
                            c1_sources.append(idx)
                    # a B' member always has a zero target here, so no_C stays 0
            if loss:
                if m0 <= 1:
                    _hit(&low_c, &low_f, idx)
                elif bpm != m0:
                    _hit(&unc_c, &unc_f, idx)

            idx += 1
            if idx < hi:
                fresh = _advance(n, k, a, y)

        return {
            "total": hi - lo,
            "A": cA,
            "A_prime": cAp,
            "A_not_A_prime": cGain,
            "A_prime_not_A": cLoss,
            "B": [B[m] for m in range(n + 1)],
            "B_prime": [Bp[m] for m in range(n + 1)],
            "C": [[C[m * (n + 1) + i] for i in range(n + 1)] for m in range(n + 1)],
            "B_prime_extra": [[extra_cnt[m], extra_first[m]] for m in range(n + 1)],
            "B_multi": [multi_c, multi_f],
            "B_outside": [out_c, out_f],
            "B_prime_uncovered": [unc_c, unc_f],
            "low_m": [low_c, low_f],
            "B_prime_no_C": [noc_c, noc_f],
            "c1_sources": c1_sources,
        }
    finally:
        free(a); free(y); free(X); free(Xp)
        free(B); free(Bp); free(C); free(extra_cnt); free(extra_first)


def tally_theorem2(int n, int k, int r, i64 lo, i64 hi):
    if n > 62:
        raise ValueError("compiled kernel supports n <= 62")
    cells = [(m, ell) for m in range(2, n + 1) for ell in range(0, r) if r - ell <= m]
    cdef int ncell = len(cells)
    cdef int* pm = <int*>calloc(ncell, sizeof(int))
    cdef int* pl = <int*>calloc(ncell, sizeof(int))
    cdef i64* dp_cnt = <i64*>calloc(ncell, sizeof(i64))
    cdef i64* dc_cnt = <i64*>calloc(ncell, sizeof(i64))
    cdef int* a = <int*>calloc(n, sizeof(int))
    cdef int* y = <int*>calloc(n, sizeof(int))
    cdef int* X = <int*>calloc(k + 1, sizeof(int))
    cdef int* Xp = <int*>calloc(k, sizeof(int))
    cdef i64* seen = <i64*>calloc(k, sizeof(i64))
    cdef i64 cAr = 0, cApr = 0, cGain = 0, cLoss = 0, cD = 0
    cdef i64 multi_c = 0, multi_f = -1, unc_c = 0, unc_f = -1, noe_c = 0, noe_f = -1
    cdef i64 dout_c = 0, dout_f = -1, bad_c = 0, bad_f = -1
    cdef dict E = {}
    cdef list e_sources = []
    cdef i64 idx, stamp = 0
    cdef int c, i, j, m, ell, m0 = 0, singles_k = 0, lp, ndp, ndc, w, t, J, s
    cdef u64 wmask, sub, full
    cdef bint inAr, inApr, gain, loss, hit_single, inD, ok, fresh = True
    try:
        for c in range(ncell):
            pm[c] = cells[c][0]
            pl[c] = cells[c][1]
        if lo < hi:
            _decode(lo, n, k, a, y)
        idx = lo
        while idx < hi:
            if fresh:
                _loads(n, k, a, X)
                m0 = X[k]
                singles_k = 0
                for i in range(k):
                    if X[i] == 1:
                        singles_k += 1
                fresh = False
            inAr = singles_k + (1 if m0 == 1 else 0) >= r
            for i in range(k):
                Xp[i] = X[i]
            for j in range(m0):
                Xp[y[j]] += 1
            lp = 0
            for i in range(k):
                if Xp[i] == 1:
                    lp += 1
            inApr = lp >= r
            gain = inAr and not inApr
            loss = inApr and not inAr
            cAr += inAr
            cApr += inApr
            cGain += gain
            cLoss += loss

            # witnesses among j < m0: Xp - X counts the hits on each bus
            wmask = 0
            hit_single = False
            for j in range(m0):
                s = y[j]
                if X[s] == 0 and Xp[s] == 1:
                    wmask |= (<u64>1) << j
                if X[s] == 1:
                    hit_single = True
            w = __builtin_popcountll(wmask)

            ndp = 0
            for c in range(ncell):
                m = pm[c]
                ell = pl[c]
                if m0 == m and singles_k == ell and w >= r - ell and (w > r - ell or not hit_single):
                    ndp += 1
                    dp_cnt[c] += 1
            if ndp > 1:
                _hit(&multi_c, &multi_f, idx)
            if loss and ndp == 0:
                _hit(&unc_c, &unc_f, idx)
            if ndp > 0:
                t = r - singles_k
                if w < t:
                    _hit(&noe_c, &noe_f, idx)
                if ndp == 1:
                    sub = wmask
                    while sub:
                        if __builtin_popcountll(sub) == t:
                            key = (m0, singles_k, sub)
                            E[key] = E.get(key, 0) + 1
                        sub = (sub - 1) & wmask
                    full = ((<u64>1) << t) - 1
                    if (wmask & full) == full:
                        e_sources.append(idx)

            J = 0
            for j in range(n):
                if X[y[j]] != 1:
                    J = j + 1
                    break
            inD = m0 == 1 and (singles_k == r - 1 or singles_k == r) and J > 1
            if inD:
                stamp += 1
                for j in range(J - 1):
                    if seen[y[j]] == stamp:
                        inD = False
                        break
                    seen[y[j]] = stamp
            ndc = 0
            if inD:
                for c in range(ncell):
                    m = pm[c]
                    ell = pl[c]
                    if singles_k == r - 1:
                        ok = J + X[y[J - 1]] == m and r - J == ell
                    else:
                        ok = J == m and r - J + 1 == ell
                    if ok:
                        ndc += 1
                        dc_cnt[c] += 1
                cD += 1
                if not gain:
                    _hit(&dout_c, &dout_f, idx)
            if inD != (ndc == 1):
                _hit(&bad_c, &bad_f, idx)

            idx += 1
            if idx < hi:
                fresh = _advance(n, k, a, y)

        return {
            "total": hi - lo,
            "A_r": cAr,
            "A_prime_r": cApr,
            "A_r_not_A_prime_r": cGain,
            "A_prime_r_not_A_r": cLoss,
            "D_prime": {cells[c]: dp_cnt[c] for c in range(ncell)},
            "E": E,
            "D": cD,
            "D_cells": {cells[c]: dc_cnt[c] for c in range(ncell)},
            "D_prime_multi": [multi_c, multi_f],
            "D_prime_uncovered": [unc_c, unc_f],
            "D_prime_no_E": [noe_c, noe_f],
            "D_outside": [dout_c, dout_f],
            "D_cell_count_bad": [bad_c, bad_f],
            "e_sources": e_sources,
        }
    finally:
        free(pm); free(pl); free(dp_cnt); free(dc_cnt)
        free(a); free(y); free(X); free(Xp); free(seen)
