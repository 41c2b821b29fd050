import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primeprods.coverage import (
    almost_primes,
    coverage_check,
    coverage_check_bruteforce,
    minimal_exponent_search,
    omega_sieve,
)
from primeprods.errors import ResourceBudgetError
from primeprods.modular import Modulus, coprime_primes_upto


def big_omega(n: int) -> int:
    """Independent factor-counting oracle."""
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            count += 1
            n //= d
        d += 1
    if n > 1:
        count += 1
    return count


class TestAlmostPrimes:
    def test_ell_one_is_primes(self):
        assert almost_primes(10, 1).values == (2, 3, 5, 7)

    def test_ell_two(self):
        # 8 = 2^3 stays out: three factors with multiplicity
        assert almost_primes(10, 2).values == (2, 3, 4, 5, 6, 7, 9, 10)

    def test_ell_three_adds_eight(self):
        assert almost_primes(10, 3).values == (2, 3, 4, 5, 6, 7, 8, 9, 10)

    def test_matches_factor_count_oracle(self):
        for ell in (1, 2, 3, 4):
            got = almost_primes(200, ell).values
            want = tuple(n for n in range(2, 201) if big_omega(n) <= ell)
            assert got == want

    def test_omega_sieve_matches_oracle(self):
        om = omega_sieve(500)
        for n in range(2, 501):
            assert om[n] == big_omega(n), n

    def test_validation(self):
        with pytest.raises(ValueError):
            almost_primes(1, 1)
        with pytest.raises(ValueError):
            almost_primes(10, 0)


class TestCoverageCheck:
    def test_golden_uncovered(self):
        report = coverage_check(7, 7, 7, 1, 1)
        assert report.uncovered == (5,)
        assert report.covered == (1, 2, 3, 4, 6)
        assert report.phi == 6

    def test_golden_covered_with_ell_two(self):
        report = coverage_check(7, 7, 7, 1, 2)
        assert report.uncovered == ()
        assert report.fully_covered
        assert report.witness[5] == (2, 6)  # lexicographically smallest (p, s)

    def test_degenerate_prime_residues(self):
        m = 13
        report = coverage_check(m, 2, m, 0, 1)
        want = tuple(sorted({p % m for p in coprime_primes_upto(m, m)}))
        assert report.covered == want

    def test_witnesses_satisfy_congruence(self):
        for m, k, ell in ((7, 1, 2), (11, 2, 1), (15, 1, 2)):
            report = coverage_check(m, m, m, k, ell)
            for a, tup in report.witness.items():
                assert len(tup) == k + (1 if ell else 0)
                prod = 1
                for t in tup:
                    prod = prod * t % m
                assert prod == a
                for p in tup[:k]:
                    assert p <= m and math.gcd(p, m) == 1
                if ell:
                    s = tup[-1]
                    assert 2 <= s <= m and big_omega(s) <= ell

    def test_representation_count_identity_ell_zero(self):
        for m, x, k in ((11, 10, 2), (30, 25, 1), (53, 53, 2)):
            report = coverage_check(m, x, m, k, 0)
            assert sum(report.counts.values()) == len(coprime_primes_upto(x, m)) ** k

    def test_monotone_in_window(self):
        small = set(coverage_check(31, 10, 10, 1, 1).covered)
        large = set(coverage_check(31, 20, 25, 1, 1).covered)
        assert small <= large

    def test_validation(self):
        with pytest.raises(ValueError):
            coverage_check(7, 8, 7, 1, 1)  # x > m
        with pytest.raises(ValueError):
            coverage_check(7, 7, 9, 1, 1)  # y > m
        with pytest.raises(ValueError):
            coverage_check(7, 7, 7, 0, 0)  # nothing to multiply
        # the override admits oversized windows
        report = coverage_check(7, 7, 14, 1, 1, allow_large=True)
        assert report.fully_covered

    def test_counts_keys_are_units(self):
        report = coverage_check(12, 12, 12, 1, 1)
        assert set(report.counts) == set(Modulus(12).units)


class TestPathAgreement:
    @pytest.mark.parametrize("m", [2, 3, 7, 12, 30, 53, 97, 101])
    @pytest.mark.parametrize("k,ell", [(1, 1), (1, 2), (2, 1), (0, 2), (2, 0)])
    def test_composition_equals_enumeration(self, m, k, ell):
        comp = coverage_check(m, m, m, k, ell)
        brute = coverage_check_bruteforce(m, m, m, k, ell)
        assert comp.covered == brute.covered
        assert comp.uncovered == brute.uncovered
        assert comp.counts == brute.counts
        assert comp.witness == brute.witness

    def test_budget_guard(self):
        with pytest.raises(ResourceBudgetError):
            coverage_check_bruteforce(101, 101, 101, 3, 2, budget=100)

    @given(
        st.integers(min_value=2, max_value=40),
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=2),
    )
    @settings(max_examples=40, deadline=None)
    def test_agreement_random(self, m, k, ell):
        if k + ell == 0:
            return
        comp = coverage_check(m, m, m, k, ell)
        brute = coverage_check_bruteforce(m, m, m, k, ell)
        assert comp.counts == brute.counts
        assert comp.witness == brute.witness


class TestMinimalExponentSearch:
    def test_single_point_pass(self):
        assert minimal_exponent_search(7, 1, 2, [1.0]) == 1.0

    def test_single_point_fail(self):
        assert minimal_exponent_search(7, 1, 1, [1.0]) is None

    def test_grid_value_frozen(self):
        # frozen from the tuple-enumeration oracle over the same grid
        grid = [round(0.5 + 0.05 * i, 2) for i in range(11)]
        assert minimal_exponent_search(101, 2, 1, grid) == 0.8

    def test_grid_value_against_enumeration(self):
        grid = [round(0.5 + 0.05 * i, 2) for i in range(11)]
        m, k, ell = 101, 2, 1
        units = set(Modulus(m).units)
        passing = []
        for gamma in grid:
            cut = m**gamma
            primes = coprime_primes_upto(cut, m)
            svals = [
                s
                for s in range(2, math.floor(cut) + 1)
                if big_omega(s) <= ell and math.gcd(s, m) == 1
            ]
            covered = set()
            for p, q in itertools.product(primes, repeat=2):
                base = p * q % m
                covered.update(base * s % m for s in svals)
            passing.append(covered >= units)
        want = next((g for g, ok in zip(grid, passing) if ok), None)
        assert minimal_exponent_search(m, k, ell, grid) == want

    def test_monotone_after_first_pass(self):
        grid = [round(0.5 + 0.05 * i, 2) for i in range(11)]
        found = minimal_exponent_search(101, 2, 1, grid)
        for gamma in grid:
            if gamma >= found:
                cut = 101**gamma
                assert coverage_check(101, cut, cut, 2, 1, witnesses=False).fully_covered

    def test_validation(self):
        with pytest.raises(ValueError):
            minimal_exponent_search(7, 1, 1, [])
        with pytest.raises(ValueError):
            minimal_exponent_search(7, 1, 1, [0.9, 0.5])
        with pytest.raises(ValueError):
            minimal_exponent_search(7, 1, 1, [0.5, 1.5])
