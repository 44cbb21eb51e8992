"""Digit-sum generating functions, rank polynomials, and divisor-sum checks."""
from __future__ import annotations

import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from digitsum.digitseq import (
    delta_digit_sum,
    digit_sum,
    digit_sum_range,
    power2_indicator,
    valuation2_range,
)
from digitsum.lambert import (
    PartitionCounts,
    c_sequence,
    delta_from_divisors,
    eta_dirichlet_bridge_check,
    finite_gf_coefficients,
    lambert_gf,
    lambert_gf_finite,
    mobius,
    mobius_inverse_check,
    partition_convolution_check,
    partition_counts,
    rankwise_coefficients,
)


def rel_err(got: float, want: float) -> float:
    return abs(got - want) / max(abs(want), 1e-300)


def direct_gf(b: int, z: float, terms: int) -> float:
    return sum(digit_sum(n, b) * z**n for n in range(1, terms))


class TestLambertGF:
    """Closed rank-telescoped power series against direct partial sums."""

    def test_zero_argument(self):
        assert lambert_gf(2, 0.0) == 0.0
        assert lambert_gf(7, 0.0) == 0.0

    def test_binary_half_matches_one_term_per_rank_form(self):
        # at b = 2 each rank kernel collapses to u/(1+u)
        want = sum(0.5 ** (2**l) / (1.0 + 0.5 ** (2**l)) for l in range(8)) / 0.5
        assert rel_err(lambert_gf(2, 0.5), want) < 1e-14

    @pytest.mark.parametrize(
        "b,z,terms", [(2, 0.5, 200), (3, 0.3, 200), (2, -0.5, 300), (5, 0.8, 3000)]
    )
    def test_matches_direct_partial_sum(self, b, z, terms):
        # the omitted tail is below (b-1)(log_b n + 1) |z|^n summed past the cut
        assert rel_err(lambert_gf(b, z), direct_gf(b, z, terms)) < 1e-11

    def test_triple_sum_rearrangement_binary_half(self):
        # enumerate exponents 2^(k+1) n + 2^k + l <= cutoff; each integer m
        # is hit once per set bit, so the triple sum rebuilds the series
        z, cutoff = 0.5, 260
        total = 0.0
        k = 0
        while 2**k <= cutoff:
            step, base = 2 ** (k + 1), 2**k
            n = 0
            while base + step * n <= cutoff:
                for l in range(2**k):
                    e = step * n + base + l
                    if e <= cutoff:
                        total += z**e
                n += 1
            k += 1
        assert rel_err(lambert_gf(2, 0.5), total) < 1e-9

    def test_rejects_unit_disk_boundary(self):
        with pytest.raises(ValueError):
            lambert_gf(2, 1.0)
        with pytest.raises(ValueError):
            lambert_gf(2, -1.0)

    @given(
        b=st.sampled_from([2, 3, 5]),
        z=st.floats(min_value=-0.8, max_value=0.8, allow_nan=False),
    )
    @settings(max_examples=30, deadline=None)
    def test_direct_partial_property(self, b, z):
        got = lambert_gf(b, z)
        want = direct_gf(b, z, 700)
        assert abs(got - want) < 1e-9 * max(abs(want), 1.0)


class TestLambertGFFinite:
    """Windowed finite form, polynomial fallback included."""

    def test_matches_printed_three_rank_factorization(self):
        for z in (0.37, -0.6, 2.0, 5.5):
            want = (
                z * (1 + z**2 + z**4 + z**6)
                + z**2 * (1 + z) * (1 + z**4)
                + z**4 * (1 + z + z**2 + z**3)
            )
            assert rel_err(lambert_gf_finite(2, 3, z), want) < 1e-13

    def test_single_term_outside_unit_disk(self):
        assert lambert_gf_finite(2, 1, 2) == 2.0

    def test_base_three_depth_two(self):
        want = direct_gf(3, -0.7, 9)
        assert rel_err(lambert_gf_finite(3, 2, -0.7), want) < 1e-14

    def test_polynomial_fallback_at_roots_of_unity(self):
        # z = 1 and z = -1 zero out kernel denominators
        assert lambert_gf_finite(2, 4, 1.0) == sum(
            digit_sum(n, 2) for n in range(16)
        )
        assert lambert_gf_finite(2, 2, -1.0) == direct_gf(2, -1.0, 4)
        assert lambert_gf_finite(3, 2, 1.0) == sum(digit_sum(n, 3) for n in range(9))

    def test_converges_to_infinite_form(self):
        # depths kept small enough that the true tail sits above float noise
        for (b, z, plist) in [(2, 0.6, (3, 4, 5, 6)), (3, 0.4, (2, 3))]:
            infinite = lambert_gf(b, z)
            gaps = []
            for p in plist:
                gap = abs(infinite - lambert_gf_finite(b, p, z))
                top = b**p
                # tail bound: digit sums below (b-1)(log_b n + 1) against |z|^n
                ceiling = (b - 1) * (math.log(top) / math.log(b) + 2.0)
                bound = ceiling * abs(z) ** top / (1.0 - abs(z)) ** 2
                assert gap < bound, (b, z, p)
                gaps.append(gap)
            assert gaps == sorted(gaps, reverse=True)


class TestRankwiseCoefficients:
    """Exact per-rank polynomials and their sum."""

    def test_binary_depth_three_matches_printed_factors(self):
        polys = rankwise_coefficients(2, 3)
        assert polys[0] == [0, 1, 0, 1, 0, 1, 0, 1]
        assert polys[1] == [0, 0, 1, 1, 0, 0, 1, 1]
        assert polys[2] == [0, 0, 0, 0, 1, 1, 1, 1]

    def test_depth_one_is_single_monomial(self):
        assert rankwise_coefficients(2, 1) == [[0, 1]]

    def test_rank_entry_is_the_digit(self):
        for b in (2, 3):
            polys = rankwise_coefficients(b, 4)
            for l, poly in enumerate(polys):
                for n in range(b**4):
                    assert poly[n] == (n // b**l) % b

    def test_coefficients_are_digit_sums(self):
        for b in (2, 3):
            for p in range(1, 7):
                got = finite_gf_coefficients(b, p)
                want = digit_sum_range(b**p, b)
                assert got == [int(x) for x in want]


class TestMobius:
    """Trial-division Moebius values."""

    def test_anchors(self):
        assert mobius(1) == 1
        assert mobius(6) == 1
        assert mobius(12) == 0

    def test_against_sympy(self):
        for n in range(1, 2000):
            assert mobius(n) == int(sympy.mobius(n)), n

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            mobius(0)


class TestCSequence:
    """2-adic Moebius companion values."""

    def test_anchors(self):
        assert c_sequence(1) == 1
        assert c_sequence(2) == 1
        assert c_sequence(12) == -2

    def test_odd_arguments_reduce_to_mobius(self):
        for n in range(1, 400, 2):
            assert c_sequence(n) == mobius(n)

    def test_power_of_two_scaling(self):
        # c(2^v m) = 2^(v-1) mu(m) for odd m, v >= 1
        for v in range(1, 6):
            for m in (1, 3, 5, 15):
                assert c_sequence(2**v * m) == 2 ** (v - 1) * mobius(m)


class TestDeltaFromDivisors:
    """Signed power-of-two divisor sums."""

    def test_anchors(self):
        assert delta_from_divisors(1) == 1
        assert delta_from_divisors(6) == 0
        assert delta_from_divisors(8) == -2

    def test_equals_increment_and_valuation_form_to_one_million(self):
        limit = 1_000_001
        got = np.fromiter(
            (delta_from_divisors(n) for n in range(1, limit)), dtype=np.int64
        )
        want = 1 - valuation2_range(limit)[1:]
        assert np.array_equal(got, want)
        # spot-check the digit-sum increment reading on a slice
        for n in range(1, 3000):
            assert got[n - 1] == delta_digit_sum(n - 1, 2)


class TestMobiusInverseCheck:
    """Convolution of the companion sequence against the increments."""

    def test_anchors(self):
        assert mobius_inverse_check(1)
        assert mobius_inverse_check(4)
        assert mobius_inverse_check(6)

    def test_holds_to_ten_thousand(self):
        assert all(mobius_inverse_check(n) for n in range(1, 10_001))


def brute_partition_stats(n: int) -> PartitionCounts:
    # exhaustive enumeration, small n only
    even = odd = 0

    def walk(remaining: int, largest: int, parts: int):
        nonlocal even, odd
        if remaining == 0:
            if parts % 2 == 0:
                even += 1
            else:
                odd += 1
            return
        for k in range(min(remaining, largest), 0, -1):
            walk(remaining - k, k, parts + 1)

    walk(n, n if n else 1, 0)

    power2 = 0

    def walk_distinct(remaining: int, largest: int, acc: int):
        nonlocal power2
        if remaining == 0:
            power2 += acc
            return
        for k in range(min(remaining, largest), 0, -1):
            walk_distinct(remaining - k, k - 1, acc + (1 if (k & (k - 1)) == 0 else 0))

    walk_distinct(n, n if n else 1, 0)
    return PartitionCounts(n, even, odd, power2)


class TestPartitionCounts:
    """Parity-tracked and power-of-two-weighted partition tables."""

    def test_empty_partition(self):
        pc = partition_counts(0)
        assert (pc.even_parts, pc.odd_parts, pc.power2_in_distinct) == (1, 0, 0)

    def test_three(self):
        pc = partition_counts(3)
        assert (pc.even_parts, pc.odd_parts, pc.power2_in_distinct) == (1, 2, 2)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_against_exhaustive_enumeration(self, n):
        assert partition_counts(n) == brute_partition_stats(n)

    def test_budget(self):
        with pytest.raises(ValueError):
            partition_counts(401)


class TestPartitionConvolution:
    """Power-of-two part counts convolved with the parity imbalance."""

    def test_exact_to_two_hundred(self):
        reports = partition_convolution_check(200)
        assert len(reports) == 200
        assert all(r.passed for r in reports)
        assert all(r.abs_err == 0.0 for r in reports)

    def test_reproduces_increment_values(self):
        reports = partition_convolution_check(16)
        by_n = {r.params["n"]: r for r in reports}
        assert by_n[2].lhs == 0.0  # 1 - nu_2(2)
        assert by_n[5].lhs == 1.0
        assert by_n[16].lhs == -3.0


class TestEtaDirichletBridge:
    """Closed power-of-two Dirichlet series against the increment series."""

    def test_grid_passes(self):
        reports = eta_dirichlet_bridge_check([2.0, 3.0, 1.5])
        assert all(r.passed for r in reports)
        assert reports[0].lhs == pytest.approx(4.0 / 3.0, rel=1e-15)
        assert reports[0].rel_err < 1e-6
        assert reports[2].rel_err < 1e-4

    def test_rejects_divergent_exponent(self):
        with pytest.raises(ValueError):
            eta_dirichlet_bridge_check([1.0])
