import random
from fractions import Fraction
from math import factorial

import pytest

from ewenswalk import oracle
from ewenswalk.exceptions import DomainError, SizeError
from ewenswalk.oracle import AlgebraElement, all_permutations, compose, transposition, yjm


def random_element(n, rng, terms=4):
    perms = all_permutations(n)
    return AlgebraElement(n, {rng.choice(perms): Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(terms)})


class TestPermutations:
    def test_counts(self):
        assert all_permutations(1) == [(0,)]
        assert len(all_permutations(3)) == 6
        assert len(all_permutations(7)) == 5040
        with pytest.raises(SizeError):
            all_permutations(8)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_rank_bijection(self, n):
        perms = all_permutations(n)
        assert [oracle.rank(p) for p in perms] == list(range(factorial(n)))
        assert all(oracle.unrank(oracle.rank(p), n) == p for p in perms)

    def test_compose_convention(self):
        p, q = (1, 2, 0), (0, 2, 1)
        assert compose(p, q) == tuple(p[i] for i in q)
        assert compose(p, oracle.inverse(p)) == oracle.identity(3)


class TestAlgebra:
    def test_yjm(self):
        assert yjm(2, 2) == AlgebraElement.of((1, 0))
        assert yjm(3, 3) == AlgebraElement.of(transposition(0, 2, 3)) + AlgebraElement.of(transposition(1, 2, 3))
        assert yjm(2, 4) * yjm(3, 4) == yjm(3, 4) * yjm(2, 4)
        with pytest.raises(DomainError):
            yjm(1, 3)

    def test_elementary_symmetric(self):
        assert oracle.elementary_symmetric_yjm(0, 3) == AlgebraElement.identity(3)
        e1 = oracle.elementary_symmetric_yjm(1, 3)
        assert set(e1.coeffs) == {(1, 0, 2), (2, 1, 0), (0, 2, 1)}
        e2 = oracle.elementary_symmetric_yjm(2, 3)
        assert set(e2.coeffs) == {(1, 2, 0), (2, 0, 1)} and set(e2.coeffs.values()) == {1}
        for k in range(4):
            assert oracle.elementary_symmetric_yjm(k, 4) == oracle.elementary_symmetric_yjm_naive(k, 4)

    def test_associativity(self):
        rng = random.Random(0)
        for _ in range(100):
            n = rng.randint(1, 5)
            a, b, c = (random_element(n, rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)

    def test_central(self):
        rng = random.Random(1)
        for n in (4, 5, 6):
            for k in range(n):
                e = oracle.elementary_symmetric_yjm(k, n)
                for _ in range(20 if n < 6 else 5):
                    g = AlgebraElement.of(rng.choice(all_permutations(n)))
                    assert g * e == e * g

    @pytest.mark.parametrize("n", range(1, 7))
    def test_diaconis_green(self, n):
        assert all(oracle.verify_diaconis_green(n).values())

    def test_two_cycle_class_in_s4(self):
        e = oracle.elementary_symmetric_yjm(2, 4)
        assert len(e.coeffs) == 11 and set(e.coeffs.values()) == {1}


class TestConvolution:
    def test_one_step_and_identity(self):
        assert oracle.brute_force_walk_distribution(4, 2, 1) == oracle.ewens_distribution(4, 2)
        assert oracle.brute_force_walk_distribution(4, 2, 0)[0] == 1
        assert oracle.brute_force_tv(4, 2, 0) == 1 - Fraction(1, 24)

    def test_values(self):
        assert oracle.brute_force_tv(3, 2, 1) == Fraction(1, 6)
        assert oracle.brute_force_tv(5, 1, 1) == 0

    @pytest.mark.parametrize("n", range(1, 7))
    def test_class_function(self, n):
        for theta in (Fraction(1, 2), Fraction(3, 2), 4):
            for t in range(3):
                oracle.brute_force_class_distribution(n, theta, t)

    def test_budget(self):
        with pytest.raises(SizeError):
            oracle.brute_force_walk_distribution(7, 2, 1)
        with pytest.raises(SizeError):
            oracle.brute_force_walk_distribution(3, 2, 11)

    def test_report(self):
        assert oracle.verify_convolution(3, 2, 2) == {"class_function": True, "distribution": True, "total_variation": True}


class TestCounting:
    def test_matching(self):
        assert oracle.fixed_point_tail(3, 1) == Fraction(2, 3)
        assert oracle.fixed_point_tail(4, 0) == 1
        assert all(oracle.verify_matching(7).values())

    def test_counts(self):
        assert oracle.count_by_cycles(4)[2] == 11
        assert sum(oracle.count_by_type(5).values()) == 120
