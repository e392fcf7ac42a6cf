"""Pointwise membership of a configuration in the coupling-proof events.

Notation follows the model module: ``X`` is the initial occupancy of the
``k + 1`` buses, ``X'`` the occupancy of the ``k`` buses after reassignment,
``Y`` the target list.  Every predicate is evaluated from its definition,
separately for each index, so that disjointness and partition claims are
checked rather than assumed.

First proof (at least one lonely passenger):

* ``A``: some ``X_i = 1``;  ``A'``: some ``X'_i = 1``.
* ``B_m``: ``X_{k+1} = 1``, ``X_{Y_1} = m - 1`` and ``X_i != 1`` for every
  ``i`` other than ``Y_1`` and ``k + 1``.
* ``B'_m``: ``X_{k+1} = m``, no ``X_i = 1`` for ``i <= k``, and
  ``X_{Y_j} = 0`` for some ``j <= m``.
* ``C_{m,i}``: ``B'_m`` and ``X_{Y_i} = 0``.

Second proof (at least ``r`` lonely passengers), with ``ell`` the number of
singleton buses among ``1..k``:

* ``A_r`` / ``A'_r``: at least ``r`` singletons before / after.
* a *witness* is an index ``j <= m`` whose target bus is empty initially and
  hit by no other ``j' <= m``.
* ``D'_{m,ell}``: ``X_{k+1} = m``, exactly ``ell`` singletons in ``1..k``,
  at least ``r - ell`` witnesses, and if exactly ``r - ell`` then no
  ``j <= m`` targets a singleton bus.
* ``E_{m,ell,S}``: ``D'_{m,ell}`` with every index of ``S`` a witness.
* ``J``: the first ``j`` with ``X_{Y_j} != 1`` (0 if none).
* ``D``: ``X_{k+1} = 1``, ``ell`` in ``{r - 1, r}``, ``J > 1`` and the
  targets ``Y_1..Y_{J-1}`` pairwise distinct.
* ``D_{m,ell}``: the cell of ``D`` given by ``m = J + X_{Y_J}``,
  ``ell = r - J`` when there are ``r - 1`` singletons, or ``m = J``,
  ``ell = r - J + 1`` when there are ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .model import Configuration, InputError, Params, lonely_count, reassign


def index_set_P(n: int, r: int) -> list[tuple[int, int]]:
    """Cells ``(m, ell)`` with ``2 <= m <= n``, ``ell >= 0`` and ``0 < r - ell <= m``.

    Cells with ``m > n`` are always empty and are left out.
    """
    if not 2 <= r <= n:
        raise InputError(f"index set needs 2 <= r <= n, got r={r}, n={n}")
    return [(m, ell) for m in range(2, n + 1) for ell in range(0, r) if r - ell <= m]


def _single(value, default=None):
    if len(value) == 1:
        return next(iter(value))
    return default


@dataclass(frozen=True)
class EventFlagsT1:
    in_A: bool
    in_A_prime: bool
    b_members: frozenset
    b_prime_members: frozenset
    c_members: frozenset  # pairs (m, i)

    @property
    def m_if_B(self) -> Optional[int]:
        return _single(self.b_members)

    @property
    def m_if_B_prime(self) -> Optional[int]:
        return _single(self.b_prime_members)

    @property
    def c_witnesses(self) -> frozenset:
        return frozenset(i for _, i in self.c_members)


@dataclass(frozen=True)
class EventFlagsT2:
    in_A_r: bool
    in_A_prime_r: bool
    d_prime_cells: frozenset
    e_sets: frozenset  # frozensets of 1-based target indices
    in_D: bool
    d_cells: frozenset
    j_value: int

    @property
    def d_prime_cell(self) -> Optional[tuple[int, int]]:
        return _single(self.d_prime_cells)

    @property
    def d_cell(self) -> Optional[tuple[int, int]]:
        return _single(self.d_cells)


def first_nonlonely_index(config: Configuration, params: Params) -> int:
    """``J``: smallest ``j`` in ``1..n`` with ``X_{Y_j} != 1``, or 0."""
    X = config.validate(params).loads(params)
    return _first_nonlonely(X, config.targets)


def _first_nonlonely(X, targets) -> int:
    for j, y in enumerate(targets, start=1):
        if X[y - 1] != 1:
            return j
    return 0


def classify_theorem1(config: Configuration, params: Params) -> EventFlagsT1:
    config.validate(params)
    n, k = params.n, params.k
    X = config.loads(params)
    Y = config.targets
    _, X_after = reassign(config, params)

    in_A = lonely_count(X) > 0
    in_A_prime = lonely_count(X_after) > 0

    b_members = set()
    for m in range(2, n + 1):
        y1 = Y[0]
        if (
            X[k] == 1
            and X[y1 - 1] == m - 1
            and all(X[i - 1] != 1 for i in range(1, k + 2) if i not in (y1, k + 1))
        ):
            b_members.add(m)

    b_prime_members = set()
    c_members = set()
    for m in range(2, n + 1):
        base = X[k] == m and all(X[i] != 1 for i in range(k))
        if base and any(X[Y[j] - 1] == 0 for j in range(m)):
            b_prime_members.add(m)
        for i in range(1, m + 1):
            if m in b_prime_members and X[Y[i - 1] - 1] == 0:
                c_members.add((m, i))

    return EventFlagsT1(
        in_A, in_A_prime, frozenset(b_members), frozenset(b_prime_members), frozenset(c_members)
    )


def witness_indices(X, targets, m: int, k: int) -> list[int]:
    """Indices ``j <= m`` whose target is an initially empty bus hit only by ``j``."""
    hits = [0] * k
    for j in range(m):
        hits[targets[j] - 1] += 1
    return [j + 1 for j in range(m) if X[targets[j] - 1] == 0 and hits[targets[j] - 1] == 1]


def _in_d_prime(X, targets, m: int, ell: int, r: int, k: int, witnesses) -> bool:
    if X[k] != m or lonely_count(X[:k]) != ell:
        return False
    if len(witnesses) < r - ell:
        return False
    if len(witnesses) == r - ell and any(X[targets[j] - 1] == 1 for j in range(m)):
        return False
    return True


def _in_d(X, targets, r: int, k: int, J: int) -> bool:
    if X[k] != 1 or lonely_count(X[:k]) not in (r - 1, r) or J <= 1:
        return False
    head = targets[: J - 1]
    return len(set(head)) == len(head)


def _in_d_cell(X, targets, m: int, ell: int, r: int, k: int, J: int, in_D: bool) -> bool:
    if not in_D:
        return False
    singles = lonely_count(X[:k])
    if singles == r - 1:
        return J + X[targets[J - 1] - 1] == m and r - J == ell
    return J == m and r - J + 1 == ell


def classify_theorem2(config: Configuration, params: Params) -> EventFlagsT2:
    config.validate(params)
    n, k, r = params.n, params.k, params.r
    if r is None or not 2 <= r <= n:
        raise InputError(f"second-proof events need 2 <= r <= n, got r={r}")
    X = config.loads(params)
    Y = config.targets
    _, X_after = reassign(config, params)
    cells = index_set_P(n, r)

    in_A_r = lonely_count(X) >= r
    in_A_prime_r = lonely_count(X_after) >= r

    # witnesses depend on m only; X_{k+1} <= n so every cell's m is in range
    witness_by_m = {m: witness_indices(X, Y, m, k) for m in range(2, n + 1)}
    d_prime_cells = frozenset(
        (m, ell) for m, ell in cells if _in_d_prime(X, Y, m, ell, r, k, witness_by_m[m])
    )
    e_sets = set()
    for m, ell in d_prime_cells:
        e_sets.update(frozenset(S) for S in combinations(witness_by_m[m], r - ell))

    J = _first_nonlonely(X, Y)
    in_D = _in_d(X, Y, r, k, J)
    d_cells = frozenset((m, ell) for m, ell in cells if _in_d_cell(X, Y, m, ell, r, k, J, in_D))

    return EventFlagsT2(in_A_r, in_A_prime_r, d_prime_cells, frozenset(e_sets), in_D, d_cells, J)
