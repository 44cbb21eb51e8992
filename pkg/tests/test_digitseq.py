"""Integer sequence layer: exact values and structural invariants."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitsum.digitseq import (
    digit_count,
    digit_sum,
    digit_sum_range,
    delta_digit_sum,
    legendre_checks,
    power2_indicator,
    thue_morse_sign,
    valuation2,
    valuation2_range,
)


class TestDigitSum:
    def test_first_sixteen_binary_values(self):
        """Classical head of the binary digit-sum sequence."""
        expected = [0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4]
        assert [digit_sum(n, 2) for n in range(16)] == expected

    def test_zero_has_empty_expansion(self):
        assert digit_sum(0, 10) == 0

    def test_decimal_digits(self):
        assert digit_sum(1234, 10) == 10

    def test_arbitrary_size_integers(self):
        # 10**50 has a single nonzero digit in base 10
        assert digit_sum(10**50, 10) == 1
        assert digit_sum(2**200 - 1, 2) == 200

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            digit_sum(-1, 2)
        with pytest.raises(ValueError):
            digit_sum(3, 1)

    @given(st.integers(min_value=0, max_value=10**5 - 1), st.sampled_from([2, 3, 10]))
    def test_recurrence_all_residues(self, n, b):
        """digit_sum(b*n + j) == digit_sum(n) + j for every digit j."""
        base_value = digit_sum(n, b)
        for j in range(b):
            assert digit_sum(b * n + j, b) == base_value + j


class TestDigitCount:
    def test_binary_examples(self):
        assert digit_count(7, 2) == 3
        assert digit_count(8, 2) == 4

    def test_decimal_example(self):
        assert digit_count(100, 10) == 3

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            digit_count(0, 2)

    @given(st.integers(min_value=1, max_value=10**30), st.sampled_from([2, 3, 10]))
    def test_unique_bracketing_power(self, n, b):
        """digit_count(n, b) is the unique d with b^(d-1) <= n < b^d."""
        d = digit_count(n, b)
        assert b ** (d - 1) <= n < b**d

    def test_exact_powers_not_off_by_one(self):
        # exact powers are the float-log failure mode; must be exact here
        for e in [10, 48, 53, 100]:
            assert digit_count(2**e, 2) == e + 1
            assert digit_count(2**e - 1, 2) == e


class TestValuation2:
    def test_examples(self):
        assert valuation2(48) == 4
        assert valuation2(1) == 0
        assert valuation2(2**30) == 30

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            valuation2(0)

    @given(st.integers(min_value=1, max_value=10**18))
    def test_divides_and_next_power_does_not(self, n):
        e = valuation2(n)
        assert n % 2**e == 0
        assert n % 2 ** (e + 1) != 0


class TestDeltaDigitSum:
    def test_examples(self):
        assert delta_digit_sum(5, 2) == 0
        assert delta_digit_sum(0, 2) == 1
        assert delta_digit_sum(7, 2) == -2

    @given(st.integers(min_value=1, max_value=10**6))
    def test_binary_delta_is_one_minus_valuation(self, n):
        """delta(n-1) + valuation2(n) == 1, the carry-count identity."""
        assert delta_digit_sum(n - 1, 2) == 1 - valuation2(n)


class TestThueMorseSign:
    def test_examples(self):
        assert thue_morse_sign(0) == 1
        assert thue_morse_sign(3) == 1
        assert thue_morse_sign(7) == -1

    @given(st.integers(min_value=0, max_value=10**6))
    def test_parity_and_sibling_flip(self, n):
        sign = thue_morse_sign(n)
        assert sign == (1 if digit_sum(n, 2) % 2 == 0 else -1)
        assert thue_morse_sign(2 * n) == -thue_morse_sign(2 * n + 1)


class TestPower2Indicator:
    def test_examples(self):
        assert power2_indicator(8) == 1
        assert power2_indicator(12) == 0
        assert power2_indicator(1) == 1

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            power2_indicator(0)

    @given(st.integers(min_value=0, max_value=60))
    def test_powers_and_neighbors(self, e):
        assert power2_indicator(2**e) == 1
        if e >= 2:
            assert power2_indicator(2**e + 1) == 0
            assert power2_indicator(2**e - 1) == 0


class TestLegendreChecks:
    @pytest.mark.parametrize("n", [6, 1, 1024])
    def test_examples(self, n):
        result = legendre_checks(n)
        assert result.lhs_valuation_identity
        assert result.lhs_factorial_identity

    @given(st.integers(min_value=1, max_value=3000))
    @settings(max_examples=50)
    def test_random_n(self, n):
        result = legendre_checks(n)
        assert result.lhs_valuation_identity and result.lhs_factorial_identity


class TestRangeScans:
    def test_digit_sum_range_matches_scalar(self):
        for b in (2, 3, 10):
            block = digit_sum_range(2000, b)
            assert [int(v) for v in block[:64]] == [digit_sum(n, b) for n in range(64)]
            assert int(block[1999]) == digit_sum(1999, b)

    def test_valuation2_range_matches_scalar(self):
        v = valuation2_range(4097)
        assert int(v[0]) == 0
        assert all(int(v[n]) == valuation2(n) for n in range(1, 4097))

    def test_digit_sum_from_valuation_cumsum(self):
        """digit_sum(n, 2) == n - sum_{k<=n} valuation2(k) up to 10^5."""
        limit = 10**5
        v = valuation2_range(limit + 1)
        cum = np.cumsum(v)
        s = digit_sum_range(limit + 1, 2)
        n = np.arange(limit + 1, dtype=np.int64)
        assert np.array_equal(s, n - cum)
