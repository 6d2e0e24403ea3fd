import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thetakit.exact_arith import (
    MultiplicityVector,
    bernoulli,
    binomial,
    partition_multiplicities,
    rational_from_str,
    rational_to_str,
)


def bernoulli_by_series_inversion(n_max):
    # x/(e^x - 1) = 1 / sum_k x^k/(k+1)!; invert the power series term by term
    a = [Fraction(1, math.factorial(k + 1)) for k in range(n_max + 1)]
    b = [Fraction(0)] * (n_max + 1)
    b[0] = Fraction(1)
    for n in range(1, n_max + 1):
        b[n] = -sum(a[k] * b[n - k] for k in range(1, n + 1))
    return [b[n] * math.factorial(n) for n in range(n_max + 1)]


def partition_count_pentagonal(n_max):
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)


class TestBernoulli:
    @pytest.mark.parametrize("n,expected", [(0, 1), (1, Fraction(-1, 2)), (3, 0), (8, Fraction(-1, 30))])
    def test_examples(self, n, expected):
        assert bernoulli(n) == expected

    def test_matches_series_inversion(self):
        oracle = bernoulli_by_series_inversion(40)
        assert [bernoulli(n) for n in range(41)] == oracle

    def test_parity_and_sign(self):
        for n in range(3, 60, 2):
            assert bernoulli(n) == 0
        for k in range(1, 30):
            assert (bernoulli(2 * k) > 0) == (k % 2 == 1)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            bernoulli(-1)

    def test_concurrent_callers_agree(self):
        results = []

        def work():
            results.append(tuple(bernoulli(n) for n in range(0, 50)))

        threads = [threading.Thread(target=work) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(set(results)) == 1


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (8, 3, 56), (6, 7, 0), (5, -1, 0), (0, 0, 1)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


class TestPartitions:
    def test_small(self):
        assert [v.m for v in partition_multiplicities(1)] == [(1,)]
        assert [v.m for v in partition_multiplicities(3)] == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]
        assert len(partition_multiplicities(6)) == 11

    def test_counts_match_pentagonal_recurrence(self):
        p = partition_count_pentagonal(20)
        for n in range(1, 21):
            assert len(partition_multiplicities(n)) == p[n]

    @pytest.mark.parametrize("n", range(1, 16))
    def test_constraint_uniqueness_and_order(self, n):
        vs = partition_multiplicities(n)
        for v in vs:
            assert sum(j * m for j, m in enumerate(v.m, 1)) == n
        ms = [v.m for v in vs]
        assert len(set(ms)) == len(ms)
        assert ms == sorted(ms, reverse=True)

    def test_vector_validation(self):
        with pytest.raises(ValueError):
            MultiplicityVector(3, (1, 0, 0))
        with pytest.raises(ValueError):
            partition_multiplicities(0)
        assert MultiplicityVector(4, (0, 2, 0, 0)).parts == 2


class TestRationalText:
    @pytest.mark.parametrize(
        "x,text", [(Fraction(-3, 4), "-3/4"), (Fraction(5), "5/1"), (Fraction(0), "0/1")]
    )
    def test_emit(self, x, text):
        assert rational_to_str(x) == text

    @pytest.mark.parametrize("text,x", [("6/8", Fraction(3, 4)), ("7", Fraction(7)), ("-2/1", Fraction(-2))])
    def test_accept(self, text, x):
        assert rational_from_str(text) == x

    @pytest.mark.parametrize("bad", ["1.5", "1/-2", "a/b", "", "1/0"])
    def test_reject(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            rational_from_str(bad)

    @given(rationals)
    def test_round_trip(self, x):
        assert rational_from_str(rational_to_str(x)) == x

    @given(rationals, rationals)
    def test_exact_inverses(self, a, b):
        assert (a + b) - b == a
        if b:
            assert (a * b) / b == a
