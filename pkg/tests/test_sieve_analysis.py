import math

import pytest

from primeprods.admissibility import DEFAULT_CONSTANTS
from primeprods.coverage import coverage_check
from primeprods.errors import ResourceBudgetError, UnsupportedCaseError
from primeprods.expsums import build_counts, t_k_from_counts
from primeprods.modular import Modulus, coprime_primes_upto, mod_inverse
from primeprods.sieve_analysis import (
    build_sequence,
    end_to_end_witness,
    level_exponents,
    profile_distribution,
    sieve_predicate,
)

TABLE_ROWS = (("k2", 2, 3, 0.905), ("k3", 3, 3, 0.864), ("k4", 4, 3, 0.760),
              ("k4", 4, 4, 0.673))


class TestBuildSequence:
    def test_k1_elements_are_inverses(self):
        seq = build_sequence(1, 11, 10, 11, 1)
        assert sorted(seq.multiplicity) == [4, 6, 8, 9]
        assert all(c == 1 for c in seq.multiplicity.values())
        assert seq.witness[6] == (2,)   # 2 inverts to 6 mod 11
        assert seq.witness[4] == (3,)

    def test_full_window_total(self):
        for m, x, k in ((11, 10, 1), (53, 50, 2)):
            seq = build_sequence(1, m, x, m, k)
            assert seq.total == len(coprime_primes_upto(x, m)) ** k

    def test_total_matches_t_k(self):
        for m, x, y, k, a in ((11, 10, 5, 2, 1), (53, 26.5, 30, 2, 7),
                              (101, 50, 60, 1, 100)):
            counts = build_counts(x, m, k)
            seq = build_sequence(a, m, x, y, k)
            assert seq.total == t_k_from_counts(counts, a, y)

    def test_multiplicities_match_enumeration(self):
        m, x, y, k, a = 11, 10, 11, 2, 3
        primes = coprime_primes_upto(x, m)
        counts: dict[int, int] = {}
        for p in primes:
            for q in primes:
                v = a * mod_inverse(p, m) * mod_inverse(q, m) % m
                if 1 <= v <= y:
                    counts[v] = counts.get(v, 0) + 1
        seq = build_sequence(a, m, x, y, k)
        assert seq.multiplicity == counts

    def test_witnesses_verify(self):
        seq = build_sequence(3, 101, 30, 60, 2)
        for v, tup in seq.witness.items():
            prod = 3
            for p in tup:
                prod = prod * mod_inverse(p, 101) % 101
            assert prod == v

    def test_validation(self):
        with pytest.raises(ValueError):
            build_sequence(2, 10, 10, 10, 1)  # a shares a factor with m
        with pytest.raises(ValueError):
            build_sequence(1, 11, 10, 12, 1)  # y > m
        with pytest.raises(ValueError):
            build_sequence(1, 11, 10, 11, 0)
        with pytest.raises(ResourceBudgetError):
            build_sequence(1, 101, 100, 101, 3, budget=10)


class TestProfile:
    def test_d_one_recovers_deviation(self):
        m, x, y, k, a = 101, 50, 60, 2, 1
        seq = build_sequence(a, m, x, y, k)
        prof = profile_distribution(seq, 10)
        first = prof.records[0]
        assert first.d == 1
        assert first.count == seq.total
        main = seq.tuple_count * math.floor(y) / m
        assert first.remainder == pytest.approx(abs(seq.total - main))

    def test_shared_factor_divisors_count_zero(self):
        seq = build_sequence(1, 10, 9, 10, 1)
        prof = profile_distribution(seq, 10)
        for rec in prof.records:
            if math.gcd(rec.d, 10) > 1:
                assert rec.count == 0
                assert not rec.coprime
                assert rec.remainder == rec.expected

    def test_counts_match_per_element_scan(self):
        m, x, y, k = 101, 50, 101, 2
        seq = build_sequence(1, m, x, y, k)
        prof = profile_distribution(seq, 10)
        for rec in prof.records:
            brute = sum(c for v, c in seq.multiplicity.items() if v % rec.d == 0)
            assert rec.count == brute, rec.d

    def test_reference_curves(self):
        seq = build_sequence(1, 53, 25, 53, 1)
        prof = profile_distribution(seq, 5, kappas=(0.1, 0.5))
        assert set(prof.reference_curves) == {0.1, 0.5}
        assert prof.sum_remainders >= 0

    def test_level_validation(self):
        seq = build_sequence(1, 11, 10, 11, 1)
        with pytest.raises(ValueError):
            profile_distribution(seq, 0.5)


class TestLevelExponents:
    def test_k2_reference_row(self):
        le = level_exponents(2, 0.905, 0.905, 0.0, 3)
        assert le.d_exponent == pytest.approx(0.31)
        assert le.degree == pytest.approx(0.905 / 0.31)
        assert le.degree < le.theta
        assert le.sieve_pass

    def test_k3_reference_row(self):
        le = level_exponents(3, 0.864, 0.864, 0.0, 3)
        assert le.sieve_pass

    def test_zero_denominator(self):
        le = level_exponents(4, 0.9, 0.5, 0.0, 5)
        assert le.d_exponent == 0.0
        assert le.degree is None
        assert not le.sieve_pass

    def test_k1_uses_min_of_two_levels(self):
        le = level_exponents(1, 0.997, 0.997, 0.0, 17)
        want = min(0.997 / 16 + 0.997 - 1, 0.997 / 3 + 0.997 - 1.25)
        assert le.d_exponent == pytest.approx(want)
        assert le.sieve_pass

    def test_epsilon_in_numerator(self):
        base = level_exponents(2, 0.905, 0.905, 0.0, 3)
        eps = level_exponents(2, 0.905, 0.905, 0.01, 3)
        assert eps.d_exponent == base.d_exponent
        assert eps.degree == pytest.approx((0.905 + 0.01) / base.d_exponent)

    @pytest.mark.parametrize("case,k,ell,alpha", TABLE_ROWS)
    def test_table_rows_bracket(self, case, k, ell, alpha):
        assert level_exponents(k, alpha, alpha, 0.0, ell).sieve_pass
        below = level_exponents(k, alpha - 0.002, alpha - 0.002, 0.0, ell)
        assert not below.sieve_pass

    def test_validation(self):
        with pytest.raises(UnsupportedCaseError):
            level_exponents(5, 0.9, 0.9, 0.0, 3)
        with pytest.raises(ValueError):
            level_exponents(2, 0.4, 0.9, 0.0, 3)
        with pytest.raises(ValueError):
            level_exponents(2, 0.9, 0.9, -0.1, 3)


class TestSievePredicate:
    def test_below_threshold(self):
        assert sieve_predicate(1.0, 2)  # theta_2 = 1.955440

    def test_boundary_is_strict(self):
        assert not sieve_predicate(DEFAULT_CONSTANTS.theta_value(3), 3)

    def test_reference_row_degree(self):
        le = level_exponents(2, 0.905, 0.905, 0.0, 3)
        assert sieve_predicate(le.degree, 3)

    def test_validation(self):
        with pytest.raises(ValueError):
            sieve_predicate(1.0, 1)
        with pytest.raises(ValueError):
            sieve_predicate(math.inf, 3)


class TestEndToEndWitness:
    def test_uncovered_class_has_no_witness(self):
        assert end_to_end_witness(7, 7, 7, 1, 1, 5) is None

    def test_smallest_almost_prime_element(self):
        # A_1 for a=5 mod 7 is {6, 4, 1}; 4 = 2*2 is the smallest with
        # at most two factors (frozen from the direct scan oracle)
        hit = end_to_end_witness(7, 7, 7, 1, 2, 5)
        assert hit is not None
        assert hit.value == 4
        assert hit.primes == (3,)

    def test_witness_satisfies_congruence(self):
        hit = end_to_end_witness(101, 50, 60, 2, 2, 3)
        if hit is not None:
            prod = 3
            for p in hit.primes:
                prod = prod * mod_inverse(p, 101) % 101
            assert prod == hit.value

    def test_matches_coverage_on_small_grid(self):
        for m in (7, 11, 13, 15):
            mod = Modulus(m)
            for k, ell in ((1, 1), (1, 2), (2, 1)):
                report = coverage_check(m, m, m, k, ell)
                for a in mod.units:
                    hit = end_to_end_witness(m, m, m, k, ell, a)
                    assert (hit is not None) == (a in report.covered), (m, k, ell, a)

    def test_validation(self):
        with pytest.raises(ValueError):
            end_to_end_witness(7, 7, 7, 1, 0, 5)
