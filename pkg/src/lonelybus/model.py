"""Configurations, occupancy vectors and the reassignment coupling.

A configuration is a pair ``(assignment, targets)``: ``assignment`` puts each
of the ``n`` passengers on one of ``k + 1`` buses, ``targets`` is the list
``Y_1, ..., Y_n`` of replacement buses in ``1..k``.  Buses and passengers are
1-based everywhere.

Configurations are enumerated lexicographically on the concatenated sequence
``assignment + targets``.  The rank of a configuration in that order is its
*index*; indices let the enumeration be cut into contiguous ranges.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

DEFAULT_MAX_ENUM = 10**8
MAX_ENUM_ENV = "LONELYBUS_MAX_ENUM"


class InputError(ValueError):
    """Parameters or sequences outside their documented range."""


class ContractError(ValueError):
    """A constructive map was called outside its domain."""


class EnumerationCapError(RuntimeError):
    """Exhaustive enumeration would exceed the configured cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"enumeration needs {required} configurations, cap is {cap} "
            f"(raise --max-enum / {MAX_ENUM_ENV} or use simulate)"
        )


@dataclass(frozen=True)
class Params:
    n: int
    k: int
    r: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InputError(f"n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise InputError(f"k must be an integer >= 1, got {self.k!r}")
        if self.r is not None and not (isinstance(self.r, int) and 1 <= self.r <= self.n):
            raise InputError(f"r must satisfy 1 <= r <= n={self.n}, got {self.r!r}")

    @property
    def config_count(self) -> int:
        return (self.k + 1) ** self.n * self.k**self.n


@dataclass(frozen=True, order=True)
class Configuration:
    assignment: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        object.__setattr__(self, "targets", tuple(self.targets))

    def validate(self, params: Params) -> "Configuration":
        n, k = params.n, params.k
        if len(self.assignment) != n or len(self.targets) != n:
            raise InputError(f"configuration sequences must have length n={n}")
        if any(not 1 <= a <= k + 1 for a in self.assignment):
            raise InputError(f"assignment entries must lie in 1..{k + 1}: {self.assignment}")
        if any(not 1 <= y <= k for y in self.targets):
            raise InputError(f"target entries must lie in 1..{k}: {self.targets}")
        return self

    def loads(self, params: Params) -> tuple[int, ...]:
        """Initial occupancy ``X_1..X_{k+1}``."""
        return occupancy_from_assignment(self.assignment, params.k + 1)


def occupancy_from_assignment(assignment: Sequence[int], bus_count: int) -> tuple[int, ...]:
    loads = [0] * bus_count
    for bus in assignment:
        if not 1 <= bus <= bus_count:
            raise InputError(f"bus {bus} outside 1..{bus_count}")
        loads[bus - 1] += 1
    return tuple(loads)


def reassign(config: Configuration, params: Params) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Take bus ``k + 1`` out of service.

    The passengers on bus ``k + 1``, in increasing passenger index, move to
    ``Y_1, Y_2, ...`` respectively.  Returns the ``k``-bus assignment and its
    occupancy ``X'``.
    """
    config.validate(params)
    k = params.k
    moved = []
    slot = 0
    for bus in config.assignment:
        if bus == k + 1:
            moved.append(config.targets[slot])
            slot += 1
        else:
            moved.append(bus)
    moved = tuple(moved)
    return moved, occupancy_from_assignment(moved, k)


def lonely_count(loads: Sequence[int]) -> int:
    """Number of lonely passengers, i.e. of buses carrying exactly one."""
    return sum(1 for x in loads if x == 1)


def enumeration_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(MAX_ENUM_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{MAX_ENUM_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_ENUM


def check_cap(params: Params, max_enum: Optional[int] = None) -> int:
    required = params.config_count
    cap = enumeration_cap(max_enum)
    if required > cap:
        raise EnumerationCapError(required, cap)
    return required


def configuration_weight(params: Params) -> Fraction:
    """Probability of each single configuration (they are equally likely)."""
    return Fraction(1, params.config_count)


def enumerate_configurations(params: Params, max_enum: Optional[int] = None) -> Iterator[Configuration]:
    """Yield every configuration once, in lexicographic order.

    Each carries weight :func:`configuration_weight`.
    """
    check_cap(params, max_enum)
    n, k = params.n, params.k
    target_seqs = list(itertools.product(range(1, k + 1), repeat=n))
    for assignment in itertools.product(range(1, k + 2), repeat=n):
        for targets in target_seqs:
            yield Configuration(assignment, targets)


def configuration_at(index: int, params: Params) -> Configuration:
    """Inverse of :func:`configuration_index`."""
    n, k = params.n, params.k
    if not 0 <= index < params.config_count:
        raise InputError(f"configuration index {index} out of range")
    a_rank, y_rank = divmod(index, k**n)
    assignment = [0] * n
    targets = [0] * n
    for p in range(n - 1, -1, -1):
        a_rank, d = divmod(a_rank, k + 1)
        assignment[p] = d + 1
        y_rank, d = divmod(y_rank, k)
        targets[p] = d + 1
    return Configuration(tuple(assignment), tuple(targets))


def configuration_index(config: Configuration, params: Params) -> int:
    """Rank of ``config`` in the lexicographic enumeration."""
    k = params.k
    idx = 0
    for a in config.assignment:
        idx = idx * (k + 1) + (a - 1)
    for y in config.targets:
        idx = idx * k + (y - 1)
    return idx
