from fractions import Fraction
from math import factorial

import pytest

from lonelybus import kernels
from lonelybus.events import classify_theorem1, classify_theorem2
from lonelybus.model import (
    Configuration,
    ContractError,
    EnumerationCapError,
    Params,
    configuration_at,
    configuration_index,
    enumerate_configurations,
)
from lonelybus.verify import (
    association_expand,
    association_invert,
    association_multiplicity,
    bijection_backward,
    bijection_forward,
    verify_theorem1,
    verify_theorem2,
)

from oracles import theorem2_counts


def C(a, y):
    return Configuration(a, y)


class TestBijection:
    @pytest.mark.parametrize(
        "sigma,i,tau,n,k",
        [
            (C((2, 2), (1, 1)), 2, C((1, 2), (1, 1)), 2, 1),
            (C((2, 2), (1, 1)), 1, C((2, 1), (1, 1)), 2, 1),
            (C((3, 3, 3), (1, 1, 1)), 1, C((3, 1, 1), (1, 1, 1)), 3, 2),
        ],
    )
    def test_examples(self, sigma, i, tau, n, k):
        params = Params(n, k)
        assert bijection_forward(sigma, i, params) == tau
        assert classify_theorem1(tau, params).m_if_B == sigma.assignment.count(k + 1)
        assert bijection_backward(tau, params) == (sigma, i)

    def test_contract_errors(self):
        params = Params(2, 1)
        with pytest.raises(ContractError):
            bijection_forward(C((1, 2), (1, 1)), 2, params)  # not in C_{m,1}
        with pytest.raises(ContractError):
            bijection_forward(C((2, 2), (1, 1)), 3, params)
        with pytest.raises(ContractError):
            bijection_backward(C((2, 2), (1, 1)), params)

    def test_round_trip_n3_k2(self):
        params = Params(3, 2)
        seen = 0
        for tau in enumerate_configurations(params):
            if classify_theorem1(tau, params).m_if_B is None:
                continue
            sigma, i = bijection_backward(tau, params)
            assert bijection_forward(sigma, i, params) == tau
            seen += 1
        assert seen > 0


class TestAssociation:
    def test_example(self):
        params = Params(2, 2, 2)
        sigma = C((3, 3), (1, 2))
        images = association_expand(sigma, 2, 0, 2, params)
        assert images == (C((1, 3), (1, 2)), C((3, 1), (1, 2)))
        for tau in images:
            assert classify_theorem2(tau, params).d_cell == (2, 0)
            assert association_invert(tau, 2, 0, 2, params) == sigma

    def test_invert_outside_image(self):
        params = Params(2, 2, 2)
        assert association_invert(C((1, 1), (1, 1)), 2, 0, 2, params) is None

    def test_expand_contract(self):
        with pytest.raises(ContractError):
            association_expand(C((1, 1), (1, 1)), 2, 0, 2, Params(2, 2, 2))

    def test_multiplicity(self):
        assert association_multiplicity(2, 0, 2) == 2
        assert association_multiplicity(5, 1, 3) == factorial(5) // factorial(3)

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 6) for k in range(1, 4)])
    def test_size_disjointness_and_inverse(self, n, k):
        for r in range(2, n + 1):
            params = Params(n, k, r)
            owner = {}
            expected = 0
            for idx in kernels.tally_theorem2(n, k, r)["e_sources"]:
                sigma = configuration_at(idx, params)
                m = sigma.assignment.count(k + 1)
                ell = sum(1 for x in sigma.loads(params)[:k] if x == 1)
                images = association_expand(sigma, m, ell, r, params)  # checks sigma's membership
                assert len(set(images)) == association_multiplicity(m, ell, r)
                expected += len(images)
                for tau in images:
                    assert owner.setdefault(tau, sigma) == sigma
                    assert association_invert(tau, m, ell, r, params) == sigma
            assert len(owner) == expected

    def test_sources_match_direct_classification(self):
        params = Params(4, 3, 2)
        direct = [
            configuration_index(c, params)
            for c in enumerate_configurations(params)
            if (cell := classify_theorem2(c, params).d_prime_cell) is not None
            and frozenset(range(1, 2 - cell[1] + 1)) in classify_theorem2(c, params).e_sets
        ]
        assert kernels.tally_theorem2(4, 3, 2)["e_sources"] == direct


class TestVerifyTheorem1:
    def test_n2_k1(self):
        rep = verify_theorem1(2, 1)
        assert rep.passed
        assert rep.claim("sum P(B_m) <= P(A minus A')").lhs == Fraction(1, 2)
        assert rep.claim("sum P(B_m) <= P(A minus A')").rhs == Fraction(1, 2)
        assert rep.claim("P(A' minus A) < sum P(B'_m)").lhs == 0
        assert rep.claim("P(A' minus A) < sum P(B'_m)").rhs == Fraction(1, 4)
        assert rep.claim("P(B_2) = 2 P(C_(2,1))").lhs == Fraction(1, 2)

    def test_n2_k2(self):
        rep = verify_theorem1(2, 2)
        assert rep.claim("P(A) = p(n,k+1,1)").lhs == Fraction(2, 3)
        assert rep.claim("P(A') = p(n,k,1)").lhs == Fraction(1, 2)
        gap = rep.claim("P(A minus A') - P(A' minus A) = p(n,k+1,1) - p(n,k,1)")
        assert gap.lhs == Fraction(1, 6) and gap.holds

    def test_n3_k2(self):
        rep = verify_theorem1(3, 2)
        assert rep.passed
        assert rep.claim("P(A) = p(n,k+1,1)").lhs == Fraction(8, 9)
        assert rep.claim("P(A') = p(n,k,1)").lhs == Fraction(3, 4)

    def test_strict_witness_recorded(self):
        claim = verify_theorem1(3, 2).claim("B'_n strictly contains A' minus A with X_(k+1) = n")
        assert claim.holds and claim.witness is not None
        assert claim.witness.assignment == (3, 3, 3)

    def test_workers(self):
        a, b = verify_theorem1(4, 2), verify_theorem1(4, 2, workers=3)
        assert a.claims == b.claims

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            verify_theorem1(5, 3, max_enum=1000)


class TestVerifyTheorem2:
    def test_n2_k2_r2(self):
        rep = verify_theorem2(2, 2, 2)
        assert rep.passed
        assert rep.claim("P(A_r) = p(n,k+1,r)").lhs == Fraction(2, 3)
        assert rep.claim("P(A'_r) = p(n,k,r)").lhs == Fraction(1, 2)

    def test_n3_k2_r3(self):
        rep = verify_theorem2(3, 2, 3)
        assert rep.passed
        assert rep.claim("P(A_r) = p(n,k+1,r)").lhs == Fraction(2, 9)
        assert rep.claim("P(A'_r) = p(n,k,r)").lhs == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_single_bus_r_equals_n(self, n):
        rep = verify_theorem2(n, 1, n)
        assert rep.claim("P(A'_r) = p(n,k,r)").lhs == 0
        assert rep.claim("P(A_r minus A'_r) >= P(A'_r minus A_r)").holds

    def test_single_witness_cell_gap(self):
        # ell = r - 1 and m >= 3: every image puts m - 1 >= 2 passengers on Y_1,
        # so J(tau) = 1 and D_(m, r-1) is empty while E_(m, r-1, [1]) is not.
        rep = verify_theorem2(4, 3, 2)
        failed = {c.name for c in rep.failures}
        assert failed == {"association images lie in D_(m,l)", "P(D_(3,1)) >= 3 P(E_(3,1,[1]))"}
        assert rep.claim("association images lie in D_(m,l)").counterexample == C(
            (1, 4, 4, 4), (2, 1, 3, 1)
        )
        oracle = theorem2_counts(4, 3, 2)
        assert oracle["D_cell", 3, 1] == 0
        assert oracle["E_head", 3, 1] == 216
        assert rep.claim("P(A_r minus A'_r) >= P(A'_r minus A_r)").holds

    def test_chain_breaks_at_four_buses(self):
        rep = verify_theorem2(4, 4, 2)
        chain = rep.claim("sum C(m,r-l) P(E_(m,l,[r-l])) <= P(D)")
        assert (chain.lhs * 4**4 * 5**4, chain.rhs * 4**4 * 5**4) == (7200, 6912)
        assert not chain.holds
        assert rep.claim("P(A_r minus A'_r) >= P(A'_r minus A_r)").holds

    def test_every_claim_is_listed_when_passing(self):
        rep = verify_theorem2(3, 3, 2)
        assert rep.passed
        names = [c.name for c in rep.claims]
        assert len(names) == len(set(names))
        assert "association_invert recovers the source" in names
        assert rep.truncation == 3

    def test_workers(self):
        a, b = verify_theorem2(4, 2, 3), verify_theorem2(4, 2, 3, workers=2)
        assert a.claims == b.claims and a.observations == b.observations
