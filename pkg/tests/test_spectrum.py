import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from ewenswalk import oracle
from ewenswalk.exceptions import DomainError
from ewenswalk.partitions import dimension, enumerate_partitions
from ewenswalk.spectrum import (
    ThetaValue,
    check_hook_shape_bound,
    check_two_row_bound,
    content_polynomial,
    monotonicity_failure_ratio,
    dimension_sum_bound_check,
    dominated_by_region_1,
    eigenvalue,
    hook_shape_bound,
    log_eigenvalue,
    monotonicity_check,
    region1_finite_bound_check,
    region2_closed_form_exponent,
    region_classify,
    region_log_asymptote,
    region_log_eigenvalue,
    region_partition_1,
    region_partition_2,
    rising_factorial,
    rising_factorial_stirling,
    schur_principal,
    second_eigenvalue,
    second_eigenvalue_is_maximal,
    spectrum,
    stirling_first,
    sum_schur_squares,
    tail_dimension_sums,
    to_fraction,
    two_row_dimension_bound_check,
    two_row_eigenvalue_bound,
)

from conftest import partitions

thetas = st.fractions(min_value=Fraction(1, 10), max_value=20, max_denominator=12)


class TestTheta:
    def test_parse(self):
        assert ThetaValue.parse("n").resolve(7) == 7
        assert ThetaValue.parse("3/2").resolve(7) == Fraction(3, 2)
        assert ThetaValue.parse("1.2").resolve(7) == Fraction(6, 5)
        assert str(ThetaValue.parse("n")) == "n"

    @pytest.mark.parametrize("bad", ["", "abc", "0", "-1", "1/0"])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            ThetaValue.parse(bad)

    def test_float_through_repr(self):
        assert to_fraction(1.2) == Fraction(6, 5)


class TestCounting:
    def test_rising_factorial(self):
        assert rising_factorial(2, 3) == 24
        assert rising_factorial(1, 5) == 120
        assert 2 * 2 + 3 * 4 + 1 * 8 == rising_factorial_stirling(2, 3) == 24

    def test_stirling_examples(self):
        assert stirling_first(3, 1) == 2
        assert stirling_first(4, 2) == 11
        assert all(stirling_first(n, n) == 1 for n in range(10))
        with pytest.raises(DomainError):
            stirling_first(3, 4)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_stirling_counts_cycles(self, n):
        counts = oracle.count_by_cycles(n)
        assert all(stirling_first(n, i) == counts[i] for i in range(1, n + 1))

    @given(thetas, st.integers(min_value=1, max_value=15))
    def test_stirling_expansion(self, theta, n):
        assert rising_factorial(theta, n) == rising_factorial_stirling(theta, n)


class TestEigenvalue:
    def test_examples(self):
        assert eigenvalue((7,), Fraction(5, 3)) == 1
        assert eigenvalue((2, 1), 2) == Fraction(1, 4) == Fraction(2 - 1, 3 + 2 - 1)
        assert eigenvalue((1, 1, 1), 2) == 0
        assert content_polynomial((2, 1), 2) == 6
        assert content_polynomial((4,), 3) == rising_factorial(3, 4)
        assert content_polynomial((1, 1), 1) == 0

    def test_second_eigenvalue(self):
        assert second_eigenvalue(3, 2) == Fraction(1, 4)
        assert second_eigenvalue(10, "n") == Fraction(9, 19)
        nontrivial = enumerate_partitions(4)[1:]
        best = max(nontrivial, key=lambda lam: abs(eigenvalue(lam, Fraction(6, 5))))
        assert best == (3, 1)

    @pytest.mark.parametrize("n", range(2, 13))
    @pytest.mark.parametrize("theta", [Fraction(11, 10), Fraction(3, 2), 2, 3, 7, "n"])
    def test_second_eigenvalue_maximal(self, n, theta):
        assert second_eigenvalue_is_maximal(n, theta)

    @given(partitions(max_n=20), thetas)
    def test_bounded_by_one(self, lam, theta):
        assert abs(eigenvalue(lam, theta)) <= 1

    @pytest.mark.parametrize("n", range(1, 16))
    def test_zero_pattern_at_integer_theta(self, n):
        for k in (1, 2, 3, 5):
            for lam in enumerate_partitions(n):
                assert (eigenvalue(lam, k) == 0) == (len(lam) > k)

    @given(partitions(max_n=20), thetas)
    def test_log_form_agrees(self, lam, theta):
        beta = eigenvalue(lam, theta)
        sign, log_abs = log_eigenvalue(lam, theta)
        if beta == 0:
            assert sign == 0 and log_abs == -math.inf
        else:
            assert sign == (1 if beta > 0 else -1)
            assert math.exp(log_abs) == pytest.approx(abs(float(beta)), rel=1e-12)

    def test_spectrum_entries(self):
        rows = spectrum(3, 2, exact=True)
        assert [e.eigenvalue_exact for e in rows] == [1, Fraction(1, 4), 0]
        assert [e.dimension for e in rows] == [1, 2, 1]
        floats = spectrum(30, 30)
        assert floats[0].eigenvalue_exact is None and floats[0].value == pytest.approx(1.0)

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("theta", [Fraction(1, 2), 2, 5])
    def test_spectral_trace_matches_return_probability(self, n, theta):
        # trace of P^t is n! times the return probability
        for t in range(4):
            trace = sum(dimension(lam) ** 2 * eigenvalue(lam, theta) ** t for lam in enumerate_partitions(n))
            assert trace == math.factorial(n) * oracle.return_probability(n, theta, t)


class TestBounds:
    def test_hook_shape(self):
        assert hook_shape_bound(1, 4, 6) == 1 == eigenvalue((6,), 4)
        ok = check_hook_shape_bound(2, 2, 3)
        assert ok.exact == ok.bound == Fraction(1, 4)
        ok = check_hook_shape_bound(3, 3, 6)
        assert ok.bound == Fraction(1, 16) and ok.exact == Fraction(2, 56) and ok.holds

    @pytest.mark.parametrize("n", range(2, 16))
    def test_hook_shape_all(self, n):
        assert all(check_hook_shape_bound(m, k, n).holds for m in range(1, n + 1) for k in range(2, 7))

    def test_schur_principal(self):
        assert schur_principal((2,), 2) == 3
        assert schur_principal((1, 1), 2) == 1
        assert schur_principal((1, 1, 1), 2) == 0
        assert sum_schur_squares(2, 2) == 10 == comb(5, 2)
        assert sum_schur_squares(5, 3) == 1287
        assert all(sum_schur_squares(1, k) == k * k for k in range(1, 6))

    @pytest.mark.parametrize("n", range(1, 13))
    def test_cauchy_identity(self, n):
        for k in range(1, 6):
            assert sum_schur_squares(n, k) == comb(n + k * k - 1, n)

    def test_dimension_sums(self):
        assert dimension_sum_bound_check(7, 7)[:2] == (1, 1)
        assert dimension_sum_bound_check(6, 3) == (381, 2400, True)
        check = dimension_sum_bound_check(10, 5)
        assert check.bound == 7620480 and check.holds

    def test_tail_sums(self):
        check = tail_dimension_sums(12, 1, "first-row")
        assert check.exact == 1 and check.holds
        check = tail_dimension_sums(12, Fraction(1, 2), "first-row")
        assert check.bound == pytest.approx(12 * 4**12 * 12**6) and check.holds
        check = tail_dimension_sums(12, Fraction(1, 2), "two-rows")
        assert check.bound == pytest.approx(144 * 4**24 * 12**3) and check.holds
        with pytest.raises(DomainError):
            tail_dimension_sums(12, 0)

    @pytest.mark.parametrize("n", [6, 10, 14])
    def test_two_row_dimension_sums(self, n):
        for l1 in range(1, n + 1):
            for l2 in range(0, min(l1, n - l1) + 1):
                assert two_row_dimension_bound_check(n, l1, l2).holds

    def test_two_row_eigenvalue_bound(self):
        assert two_row_eigenvalue_bound(10, 1) == Fraction(11, 20)
        assert eigenvalue((9, 1), 10) == Fraction(9, 19)
        assert two_row_eigenvalue_bound(10, 2) == Fraction(36, 100)
        assert eigenvalue((8, 2), 10) == Fraction(9 * 10, 18 * 19)
        assert two_row_eigenvalue_bound(10, 0) == 1 == check_two_row_bound(10, 0).exact


class TestMonotonicity:
    def test_integer_theta(self):
        report = monotonicity_check(8, 3)
        assert report["pairs"] > 0 and report["violations"] == []

    def test_failure_below_three_halves(self):
        assert monotonicity_failure_ratio(1.2) == Fraction(2, 3)
        report = monotonicity_check(5, Fraction(6, 5))
        assert ((2, 2, 1), (2, 1, 1, 1), Fraction(2, 3)) in report["absolute_violations"]

    def test_vacuous_at_two(self):
        assert eigenvalue((2, 2, 1), 2) == 0 == eigenvalue((2, 1, 1, 1), 2)

    @given(st.fractions(min_value=Fraction(101, 100), max_value=Fraction(149, 100), max_denominator=100))
    def test_ratio_formula(self, theta):
        assert monotonicity_failure_ratio(theta) == theta / (3 - theta)


class TestRegions:
    def test_partitions(self):
        assert region_partition_1(Fraction(1, 2), 6) == (3, 3)
        assert region_partition_1(Fraction(2, 5), 10) == (4, 4, 2)
        assert region_partition_1(Fraction(1, 3), 9) == (3, 3, 3)
        assert region_partition_2(Fraction(2, 3), 12) == (8, 2, 2)
        assert region_partition_2(Fraction(1, 2), 8) == (4, 2, 2)
        assert region_partition_2(Fraction(2, 5), 10) == (4, 2, 2, 2)

    @given(st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(2, 3), Fraction(3, 7)]),
           st.integers(min_value=3, max_value=60))
    def test_partitions_are_valid(self, alpha, n):
        for lam in (region_partition_1(alpha, n), region_partition_2(alpha, n)):
            assert sum(lam) == n and list(lam) == sorted(lam, reverse=True) and min(lam) > 0

    def test_classify(self):
        assert region_classify((12,)) == "R4"
        assert region_classify((2,) * 13) == "R1"
        assert region_classify((4, 2, 2, 2, 2)) == "R2"
        assert region_classify((4, 1, 1, 1, 1, 1, 1, 1, 1)) == "R3"

    def test_asymptotes(self):
        assert region_log_asymptote(Fraction(1, 2)) == pytest.approx(3 * math.log(1.5) - 2 * math.log(2))
        assert region_log_asymptote(Fraction(1, 2)) == pytest.approx(-0.1699, abs=5e-5)
        expected = (5 / 3) * math.log(5 / 3) + (4 / 3) * math.log(4 / 3) - 2 * math.log(2)
        assert region_log_asymptote(Fraction(2, 3)) == pytest.approx(expected)
        assert round(region_log_asymptote(Fraction(2, 3)), 2) == -0.15
        assert round(region_log_asymptote(Fraction(1, 2), 2), 2) == -0.22
        # the closed-form exponent for the second family bounds the limit from above
        assert region_log_asymptote(Fraction(1, 2), 2) <= region2_closed_form_exponent(Fraction(1, 2))

    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)])
    @pytest.mark.parametrize("which", [1, 2])
    def test_convergence(self, alpha, which):
        limit = region_log_asymptote(alpha, which)
        gaps = [abs(region_log_eigenvalue(alpha, n, which) - limit) for n in (24, 48, 96)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 0.02

    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)])
    def test_region1_finite_bound(self, alpha):
        for n in (12, 24, 48, 96):
            assert region1_finite_bound_check(alpha, n).holds

    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3)])
    def test_domination(self, alpha):
        assert dominated_by_region_1(alpha, 12)
