"""Pure-Python enumeration kernel.

Reference implementation of the tallies computed by ``_ckernel``; both walk
configurations ``lo <= index < hi`` in lexicographic order and return the
same dictionary.  Violation records are ``[count, first_index]`` with
``first_index = -1`` when the count is zero.
"""

from .events import classify_theorem1, classify_theorem2, index_set_P
from .model import Params, configuration_at

IMPLEMENTATION = "python"


def _hit(record, idx):
    if record[0] == 0:
        record[1] = idx
    record[0] += 1


def tally_theorem1(n, k, lo, hi):
    params = Params(n, k)
    out = {
        "total": hi - lo,
        "A": 0,
        "A_prime": 0,
        "A_not_A_prime": 0,
        "A_prime_not_A": 0,
        "B": [0] * (n + 1),
        "B_prime": [0] * (n + 1),
        "C": [[0] * (n + 1) for _ in range(n + 1)],
        "B_prime_extra": [[0, -1] for _ in range(n + 1)],
        "B_multi": [0, -1],
        "B_outside": [0, -1],
        "B_prime_uncovered": [0, -1],
        "low_m": [0, -1],
        "B_prime_no_C": [0, -1],
        "c1_sources": [],
    }
    for idx in range(lo, hi):
        config = configuration_at(idx, params)
        f = classify_theorem1(config, params)
        gain = f.in_A and not f.in_A_prime
        loss = f.in_A_prime and not f.in_A
        out["A"] += f.in_A
        out["A_prime"] += f.in_A_prime
        out["A_not_A_prime"] += gain
        out["A_prime_not_A"] += loss
        for m in f.b_members:
            out["B"][m] += 1
        if len(f.b_members) > 1:
            _hit(out["B_multi"], idx)
        if f.b_members and not gain:
            _hit(out["B_outside"], idx)
        for m in f.b_prime_members:
            out["B_prime"][m] += 1
            if not loss:
                _hit(out["B_prime_extra"][m], idx)
            if not any(mm == m for mm, _ in f.c_members):
                _hit(out["B_prime_no_C"], idx)
        for m, i in f.c_members:
            out["C"][m][i] += 1
        if any(i == 1 for _, i in f.c_members):
            out["c1_sources"].append(idx)
        if loss:
            m0 = config.assignment.count(k + 1)
            if m0 <= 1:
                _hit(out["low_m"], idx)
            elif m0 not in f.b_prime_members:
                _hit(out["B_prime_uncovered"], idx)
    return out


def tally_theorem2(n, k, r, lo, hi):
    params = Params(n, k, r)
    cells = index_set_P(n, r)
    out = {
        "total": hi - lo,
        "A_r": 0,
        "A_prime_r": 0,
        "A_r_not_A_prime_r": 0,
        "A_prime_r_not_A_r": 0,
        "D_prime": {c: 0 for c in cells},
        "E": {},
        "D": 0,
        "D_cells": {c: 0 for c in cells},
        "D_prime_multi": [0, -1],
        "D_prime_uncovered": [0, -1],
        "D_prime_no_E": [0, -1],
        "D_outside": [0, -1],
        "D_cell_count_bad": [0, -1],
        "e_sources": [],
    }
    E = out["E"]
    for idx in range(lo, hi):
        config = configuration_at(idx, params)
        f = classify_theorem2(config, params)
        gain = f.in_A_r and not f.in_A_prime_r
        loss = f.in_A_prime_r and not f.in_A_r
        out["A_r"] += f.in_A_r
        out["A_prime_r"] += f.in_A_prime_r
        out["A_r_not_A_prime_r"] += gain
        out["A_prime_r_not_A_r"] += loss
        for cell in f.d_prime_cells:
            out["D_prime"][cell] += 1
        if len(f.d_prime_cells) > 1:
            _hit(out["D_prime_multi"], idx)
        if loss and not f.d_prime_cells:
            _hit(out["D_prime_uncovered"], idx)
        if f.d_prime_cells and not f.e_sets:
            _hit(out["D_prime_no_E"], idx)
        cell = f.d_prime_cell
        if cell is not None:
            m, ell = cell
            for S in f.e_sets:
                mask = sum(1 << (j - 1) for j in S)
                key = (m, ell, mask)
                E[key] = E.get(key, 0) + 1
            if frozenset(range(1, r - ell + 1)) in f.e_sets:
                out["e_sources"].append(idx)
        if f.in_D:
            out["D"] += 1
            if not gain:
                _hit(out["D_outside"], idx)
        for c in f.d_cells:
            out["D_cells"][c] += 1
        if f.in_D != (len(f.d_cells) == 1) or len(f.d_cells) > 1:
            _hit(out["D_cell_count_bad"], idx)
    return out
