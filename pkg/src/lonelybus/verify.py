"""Constructive maps of the coupling proofs and exhaustive claim checking.

``verify_theorem1`` and ``verify_theorem2`` enumerate every configuration
for concrete ``(n, k[, r])``, tally each event with the active kernel, then
run the bijection / association maps over their whole domains.  Every claim
is recorded, passing or not, with exact rational sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Optional

from . import kernels
from .events import classify_theorem1, classify_theorem2, index_set_P
from .exact import tail_prob
from .model import (
    Configuration,
    ContractError,
    InputError,
    Params,
    check_cap,
    configuration_at,
    configuration_index,
)

RELATIONS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class Claim:
    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    counterexample: Optional[Configuration] = None
    witness: Optional[Configuration] = None

    @property
    def holds(self) -> bool:
        return RELATIONS[self.relation](self.lhs, self.rhs)


@dataclass
class VerificationReport:
    theorem: int
    params: Params
    claims: list[Claim] = field(default_factory=list)
    observations: dict = field(default_factory=dict)
    kernel: str = kernels.IMPLEMENTATION

    @property
    def truncation(self) -> int:
        """Largest ``m`` of the index cells considered (cells beyond are empty)."""
        return self.params.n

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.claims)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.holds]

    def claim(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)


def _passengers_on(assignment, bus):
    return [p for p, b in enumerate(assignment, start=1) if b == bus]


# -- first proof: the bijection between C_{m,1} x {passengers on k+1} and B_m


def bijection_forward(sigma: Configuration, i: int, params: Params) -> Configuration:
    """Move every passenger on bus ``k + 1`` except ``i`` to bus ``Y_1``."""
    k = params.k
    flags = classify_theorem1(sigma, params)
    m = sigma.assignment.count(k + 1)
    if (m, 1) not in flags.c_members:
        raise ContractError(f"{sigma} is not in C_(m,1) for m={m}")
    if not 1 <= i <= params.n or sigma.assignment[i - 1] != k + 1:
        raise ContractError(f"passenger {i} is not on bus {k + 1} in {sigma}")
    return _forward(sigma, i, k)


def _forward(sigma, i, k):
    y1 = sigma.targets[0]
    assignment = tuple(
        y1 if (b == k + 1 and p != i) else b for p, b in enumerate(sigma.assignment, start=1)
    )
    return Configuration(assignment, sigma.targets)


def bijection_backward(tau: Configuration, params: Params) -> tuple[Configuration, int]:
    """Move all passengers on bus ``Y_1`` back to bus ``k + 1``."""
    k = params.k
    if classify_theorem1(tau, params).m_if_B is None:
        raise ContractError(f"{tau} is not in any B_m")
    return _backward(tau, k)


def _backward(tau, k):
    (i,) = _passengers_on(tau.assignment, k + 1)
    y1 = tau.targets[0]
    assignment = tuple(k + 1 if b == y1 else b for b in tau.assignment)
    return Configuration(assignment, tau.targets), i


# -- second proof: the association map E_{m,l,[r-l]} -> D_{m,l}


def association_multiplicity(m: int, ell: int, r: int) -> int:
    """``m! / (m + ell - r)!``, the number of images of each source."""
    return factorial(m) // factorial(m + ell - r)


def _params_r(params: Params, r: int) -> Params:
    return params if params.r == r else Params(params.n, params.k, r)


def _in_e_head(config, m, ell, r, params):
    flags = classify_theorem2(config, params)
    return flags.d_prime_cell == (m, ell) and frozenset(range(1, r - ell + 1)) in flags.e_sets


def association_expand(
    sigma: Configuration, m: int, ell: int, r: int, params: Params
) -> tuple[Configuration, ...]:
    """All configurations associated with ``sigma``, sorted lexicographically.

    One of the ``m`` passengers on bus ``k + 1`` stays, an ordered choice of
    ``r - ell - 1`` others go one each to ``Y_1..Y_{r-ell-1}``, and the rest
    go to ``Y_{r-ell}``.
    """
    params = _params_r(params, r)
    if not _in_e_head(sigma, m, ell, r, params):
        raise ContractError(f"{sigma} is not in E_({m},{ell},[{r - ell}])")
    return _expand(sigma, r - ell, params.k)


def _expand(sigma, t, k):
    on_last = _passengers_on(sigma.assignment, k + 1)
    Y = sigma.targets
    images = []
    for stay in on_last:
        rest = [p for p in on_last if p != stay]
        for ordered in permutations(rest, t - 1):
            moved = dict(zip(ordered, Y[: t - 1]))
            assignment = list(sigma.assignment)
            for p in rest:
                assignment[p - 1] = moved.get(p, Y[t - 1])
            images.append(Configuration(tuple(assignment), Y))
    return tuple(sorted(images))


def association_invert(
    tau: Configuration, m: int, ell: int, r: int, params: Params
) -> Optional[Configuration]:
    """The source whose expansion contains ``tau``, or ``None``."""
    params = _params_r(params, r)
    tau.validate(params)
    k = params.k
    t = r - ell
    if t < 1 or t > m:
        return None
    emptied = set(tau.targets[:t])
    sigma = Configuration(
        tuple(k + 1 if b in emptied else b for b in tau.assignment), tau.targets
    )
    if not _in_e_head(sigma, m, ell, r, params):
        return None
    if tau not in _expand(sigma, t, k):
        return None
    return sigma


# -- reports


def _violation_claim(name, record, total, params):
    count, first = record
    ce = configuration_at(first, params) if count else None
    return Claim(name, Fraction(count, total), "=", Fraction(0), counterexample=ce)


def verify_theorem1(
    n: int, k: int, workers: int = 1, max_enum: Optional[int] = None
) -> VerificationReport:
    params = Params(n, k)
    total = check_cap(params, max_enum)
    t = kernels.tally_theorem1(n, k, workers=workers)
    P = lambda count: Fraction(count, total)  # noqa: E731
    report = VerificationReport(1, params)
    add = report.claims.append
    ms = range(2, n + 1)

    gain, loss = P(t["A_not_A_prime"]), P(t["A_prime_not_A"])
    sum_B = sum(P(t["B"][m]) for m in ms)
    sum_Bp = sum(P(t["B_prime"][m]) for m in ms)

    add(_violation_claim("B_m pairwise disjoint", t["B_multi"], total, params))
    add(_violation_claim("B_m inside A minus A'", t["B_outside"], total, params))
    add(Claim("sum P(B_m) <= P(A minus A')", sum_B, "<=", gain))
    add(_violation_claim("A' minus A with X_(k+1) <= 1 is empty", t["low_m"], total, params))
    add(_violation_claim("B'_m contains A' minus A with X_(k+1) = m", t["B_prime_uncovered"], total, params))
    cnt, first = t["B_prime_extra"][n]
    add(
        Claim(
            "B'_n strictly contains A' minus A with X_(k+1) = n",
            P(cnt), ">", Fraction(0),
            witness=configuration_at(first, params) if cnt else None,
        )
    )
    report.observations["strict_inclusion_by_m"] = {m: t["B_prime_extra"][m][0] > 0 for m in ms}
    add(Claim("P(A' minus A) < sum P(B'_m)", loss, "<", sum_Bp))
    add(_violation_claim("B'_m is the union of C_(m,i)", t["B_prime_no_C"], total, params))
    for m in ms:
        cs = [P(t["C"][m][i]) for i in range(1, m + 1)]
        add(Claim(f"C_({m},i) equiprobable over i", max(cs), "=", min(cs)))
    for m in ms:
        add(Claim(f"P(B'_{m}) <= {m} P(C_({m},1))", P(t["B_prime"][m]), "<=", m * P(t["C"][m][1])))
    for m in ms:
        add(Claim(f"P(B_{m}) = {m} P(C_({m},1))", P(t["B"][m]), "=", m * P(t["C"][m][1])))

    # bijection over every (sigma, i) with sigma in C_{m,1}
    images = set()
    bad_image = [0, -1]
    bad_inverse = [0, -1]
    duplicates = [0, -1]
    for idx in t["c1_sources"]:
        sigma = configuration_at(idx, params)
        m = sigma.assignment.count(k + 1)
        for i in _passengers_on(sigma.assignment, k + 1):
            tau = _forward(sigma, i, k)
            if classify_theorem1(tau, params).b_members != frozenset({m}):
                _note(bad_image, idx)
                continue
            if _backward(tau, k) != (sigma, i):
                _note(bad_inverse, idx)
            key = configuration_index(tau, params)
            if key in images:
                _note(duplicates, idx)
            images.add(key)
    add(_violation_claim("bijection forward lands in B_m", bad_image, total, params))
    add(_violation_claim("bijection backward inverts forward", bad_inverse, total, params))
    add(_violation_claim("bijection forward is injective", duplicates, total, params))
    add(Claim("bijection images exhaust the B_m", P(len(images)), "=", sum_B))

    add(Claim("P(A minus A') > P(A' minus A)", gain, ">", loss))
    p_k1, p_k = tail_prob(n, k + 1, 1), tail_prob(n, k, 1)
    add(Claim("P(A) = p(n,k+1,1)", P(t["A"]), "=", p_k1))
    add(Claim("P(A') = p(n,k,1)", P(t["A_prime"]), "=", p_k))
    add(Claim("P(A minus A') - P(A' minus A) = p(n,k+1,1) - p(n,k,1)", gain - loss, "=", p_k1 - p_k))
    return report


def _note(record, idx):
    if record[0] == 0:
        record[1] = idx
    record[0] += 1


def verify_theorem2(
    n: int, k: int, r: int, workers: int = 1, max_enum: Optional[int] = None
) -> VerificationReport:
    params = Params(n, k, r)
    if r < 2:
        raise InputError("the second proof needs r >= 2")
    total = check_cap(params, max_enum)
    t = kernels.tally_theorem2(n, k, r, workers=workers)
    P = lambda count: Fraction(count, total)  # noqa: E731
    report = VerificationReport(2, params)
    add = report.claims.append
    cells = index_set_P(n, r)

    gain, loss = P(t["A_r_not_A_prime_r"]), P(t["A_prime_r_not_A_r"])
    E = t["E"]

    def p_e(m, ell, S):
        return P(E.get((m, ell, sum(1 << (j - 1) for j in S)), 0))

    head = {(m, ell): p_e(m, ell, range(1, r - ell + 1)) for m, ell in cells}
    sum_Dp = sum(P(t["D_prime"][c]) for c in cells)
    sum_CE = sum(comb(m, r - ell) * head[m, ell] for m, ell in cells)
    p_D = P(t["D"])

    add(_violation_claim("D'_(m,l) pairwise disjoint", t["D_prime_multi"], total, params))
    add(_violation_claim("union of D'_(m,l) contains A'_r minus A_r", t["D_prime_uncovered"], total, params))
    add(Claim("P(A'_r minus A_r) <= sum P(D'_(m,l))", loss, "<=", sum_Dp))
    add(_violation_claim("D'_(m,l) is the union of E_(m,l,S)", t["D_prime_no_E"], total, params))
    for m, ell in cells:
        ps = [p_e(m, ell, S) for S in combinations(range(1, m + 1), r - ell)]
        add(Claim(f"E_({m},{ell},S) equiprobable over S", max(ps), "=", min(ps)))
    for m, ell in cells:
        add(
            Claim(
                f"P(D'_({m},{ell})) <= C({m},{r - ell}) P(E_({m},{ell},[{r - ell}]))",
                P(t["D_prime"][m, ell]), "<=", comb(m, r - ell) * head[m, ell],
            )
        )
    add(Claim("sum P(D'_(m,l)) <= sum C(m,r-l) P(E_(m,l,[r-l]))", sum_Dp, "<=", sum_CE))
    add(_violation_claim("D inside A_r minus A'_r", t["D_outside"], total, params))
    add(_violation_claim("D_(m,l) partition D", t["D_cell_count_bad"], total, params))
    add(Claim("P(D) = sum P(D_(m,l))", p_D, "=", sum(P(t["D_cells"][c]) for c in cells)))

    # association map over every source in E_{m,l,[r-l]}
    bad_size = [0, -1]
    bad_image = [0, -1]
    bad_inverse = [0, -1]
    overlap = [0, -1]
    images = set()
    branches = {"m+l-r=1": 0, "m+l-r!=1": 0}
    for idx in t["e_sources"]:
        sigma = configuration_at(idx, params)
        m = sigma.assignment.count(k + 1)
        ell = sum(1 for x in sigma.loads(params)[:k] if x == 1)
        branches["m+l-r=1" if m + ell - r == 1 else "m+l-r!=1"] += 1
        expansion = _expand(sigma, r - ell, k)
        if len(set(expansion)) != association_multiplicity(m, ell, r):
            _note(bad_size, idx)
        for tau in expansion:
            if classify_theorem2(tau, params).d_cells != frozenset({(m, ell)}):
                _note(bad_image, idx)
            if association_invert(tau, m, ell, r, params) != sigma:
                _note(bad_inverse, idx)
            key = configuration_index(tau, params)
            if key in images:
                _note(overlap, idx)
            images.add(key)
    report.observations["association_branches"] = branches
    add(_violation_claim("association expansion has m!/(m+l-r)! elements", bad_size, total, params))
    add(_violation_claim("association images lie in D_(m,l)", bad_image, total, params))
    add(_violation_claim("association_invert recovers the source", bad_inverse, total, params))
    add(_violation_claim("association expansions of distinct sources are disjoint", overlap, total, params))
    for m, ell in cells:
        mult = association_multiplicity(m, ell, r)
        add(
            Claim(
                f"P(D_({m},{ell})) >= {mult} P(E_({m},{ell},[{r - ell}]))",
                P(t["D_cells"][m, ell]), ">=", mult * head[m, ell],
            )
        )
    add(Claim("sum C(m,r-l) P(E_(m,l,[r-l])) <= P(D)", sum_CE, "<=", p_D))
    add(Claim("P(D) <= P(A_r minus A'_r)", p_D, "<=", gain))

    add(Claim("P(A_r minus A'_r) >= P(A'_r minus A_r)", gain, ">=", loss))
    p_k1, p_k = tail_prob(n, k + 1, r), tail_prob(n, k, r)
    add(Claim("P(A_r) = p(n,k+1,r)", P(t["A_r"]), "=", p_k1))
    add(Claim("P(A'_r) = p(n,k,r)", P(t["A_prime_r"]), "=", p_k))
    add(Claim("P(A_r minus A'_r) - P(A'_r minus A_r) = p(n,k+1,r) - p(n,k,r)", gain - loss, "=", p_k1 - p_k))
    return report
