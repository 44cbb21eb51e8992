import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitsum.digitseq import digit_sum
from digitsum.identities import FiniteSumParams, finite_zeta_diff_direct
from digitsum.lambert import lambert_gf
from digitsum.solver import (
    SequenceFn,
    TruncationPolicy,
    base_relation_check,
    finite_weighted_sum,
    recover_j_infinity_check,
    solve_implicit,
    solve_implicit_finite,
    weighted_digit_sum,
)
from digitsum.specfun import PrecisionContext, TruncationBudgetError


def telescoping_pair():
    # g(n) = n^-2 - (n+1)^-2 has the closed inverse g(n)/(1 - 2^-2)
    return SequenceFn(
        eval=lambda n: n**-2.0 - (n + 1.0) ** -2.0,
        decay=(3.0, 3.0),
        partial_sum=lambda a, c: a**-2.0 - c**-2.0,
    )


def reciprocal_product():
    return SequenceFn(
        eval=lambda n: 1.0 / (n * (n + 1.0)),
        decay=(1.0, 2.0),
        partial_sum=lambda a, c: 1.0 / a - 1.0 / c,
    )


def geometric(z):
    return SequenceFn(
        eval=lambda n: z**n,
        decay=(1.2, 2.0),
        partial_sum=lambda a, c: (z**a - z**c) / (1.0 - z),
    )


class TestSequenceFn:
    def test_rejects_bad_decay(self):
        with pytest.raises(ValueError):
            SequenceFn(eval=lambda n: 0.0, decay=(1.0, 1.0))
        with pytest.raises(ValueError):
            SequenceFn(eval=lambda n: 0.0, decay=(-1.0, 2.0))

    def test_rejects_empty_support(self):
        with pytest.raises(ValueError):
            SequenceFn(eval=lambda n: 0.0, support_bound=0)

    def test_block_matches_termwise(self):
        g = geometric(0.5)
        direct = sum(0.5**t for t in range(3, 9))
        assert g.block(3, 9) == pytest.approx(direct, rel=1e-15)


class TestTruncationPolicy:
    def test_rejects_negative_budget(self):
        with pytest.raises(ValueError):
            TruncationPolicy(k_max=-1)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            TruncationPolicy(term_tol=0.0)


class TestSolveImplicit:
    @pytest.mark.parametrize("n", [1, 2, 3, 10])
    def test_telescoping_pair_closed_inverse(self, n):
        got = solve_implicit(2, telescoping_pair(), n)
        want = (n**-2.0 - (n + 1.0) ** -2.0) / (1.0 - 0.25)
        assert got == pytest.approx(want, rel=1e-12)

    def test_point_support(self):
        g = SequenceFn(eval=lambda n: 1 if n == 1 else 0, support_bound=2)
        assert solve_implicit(2, g, 1) == 1
        assert solve_implicit(2, g, 2) == 0
        assert solve_implicit(2, g, 5) == 0

    def test_geometric_against_level_sums(self):
        z = 0.5
        got = solve_implicit(2, geometric(z), 3)
        want = sum(z ** (3 * 2**k) * (1 - z ** (2**k)) / (1 - z) for k in range(40))
        assert got == pytest.approx(want, rel=1e-13)

    def test_direct_blocks_without_closed_prefix(self):
        # no partial_sum: every level is summed term by term
        g = SequenceFn(eval=lambda n: float(n) ** -4.0, decay=(1.0, 4.0))
        policy = TruncationPolicy(term_tol=1e-10)
        got = solve_implicit(2, g, 5, policy)
        want = mp.nsum(
            lambda k: mp.zeta(4, 5 * 2**k) - mp.zeta(4, 6 * 2**k), [0, mp.inf]
        )
        assert got == pytest.approx(float(want), rel=1e-9)

    def test_requires_summability_declaration(self):
        bare = SequenceFn(eval=lambda n: 1.0 / n**2)
        with pytest.raises(ValueError):
            solve_implicit(2, bare, 1)

    def test_term_budget_raises(self):
        g = SequenceFn(eval=lambda n: float(n) ** -1.5, decay=(1.0, 1.5))
        ctx = PrecisionContext(max_terms=100)
        with pytest.raises(TruncationBudgetError):
            solve_implicit(2, g, 1, ctx=ctx)

    def test_level_budget_raises(self):
        with pytest.raises(TruncationBudgetError):
            solve_implicit(2, reciprocal_product(), 1, TruncationPolicy(k_max=2))

    def test_rejects_bad_arguments(self):
        g = reciprocal_product()
        with pytest.raises(ValueError):
            solve_implicit(1, g, 1)
        with pytest.raises(ValueError):
            solve_implicit(2, g, 0)


class TestFixedPoint:
    @pytest.mark.parametrize("n", [1, 2, 5, 17])
    def test_decay_route_satisfies_relation(self, n):
        g = reciprocal_product()
        residual = (
            solve_implicit(2, g, n)
            - solve_implicit(2, g, 2 * n)
            - solve_implicit(2, g, 2 * n + 1)
        )
        assert residual == pytest.approx(g.eval(n), rel=1e-10)

    @pytest.mark.parametrize("b", [2, 3])
    def test_base_b_relation(self, b):
        g = reciprocal_product()
        residual = solve_implicit(b, g, 3) - sum(
            solve_implicit(b, g, 3 * b + j) for j in range(b)
        )
        assert residual == pytest.approx(g.eval(3), rel=1e-10)

    @given(
        values=st.lists(st.integers(-50, 50), min_size=15, max_size=15),
        den=st.integers(1, 9),
    )
    @settings(max_examples=30, deadline=None)
    def test_finite_support_is_exact(self, values, den):
        table = {m + 1: Fraction(v, den) for m, v in enumerate(values)}
        g = SequenceFn(eval=lambda m: table.get(m, Fraction(0)), support_bound=16)
        for n in range(1, 16):
            residual = (
                solve_implicit(2, g, n)
                - solve_implicit(2, g, 2 * n)
                - solve_implicit(2, g, 2 * n + 1)
            )
            assert residual == table.get(n, Fraction(0))


class TestOperatorFold:
    # scaling and shifting do not commute; their canonical k-fold product is
    # the block sum over l < 2^k
    def test_noncommutation_witness(self):
        g = lambda n: n
        scale_then_shift = lambda n: g(2 * n + 2)
        shift_then_scale = lambda n: g(2 * n + 1)
        assert scale_then_shift(1) != shift_then_scale(1)

    @pytest.mark.parametrize("k", list(range(0, 7)))
    @pytest.mark.parametrize("n", [1, 2, 7])
    def test_folded_operator_equals_block_sum(self, k, n):
        g = lambda m: Fraction(1, m)
        h = g
        for _ in range(k):
            h = (lambda inner: lambda m: inner(2 * m) + inner(2 * m + 1))(h)
        block = sum(g(2**k * n + l) for l in range(2**k))
        assert h(n) == block


class TestWeightedDigitSum:
    def test_reciprocal_product_base_two(self):
        got = weighted_digit_sum(2, reciprocal_product())
        assert got == pytest.approx(2.0 * math.log(2.0), rel=1e-10)

    @pytest.mark.parametrize("b", [3, 10])
    def test_reciprocal_product_general_base(self, b):
        got = weighted_digit_sum(b, reciprocal_product())
        want = b / (b - 1.0) * math.log(b)
        assert got == pytest.approx(want, rel=1e-10)

    def test_geometric_matches_generating_function(self):
        got = weighted_digit_sum(2, geometric(0.5))
        assert got == pytest.approx(lambert_gf(2, 0.5), rel=1e-12)

    def test_three_point_support(self):
        g = SequenceFn(eval=lambda n: 1 if n <= 3 else 0, support_bound=4)
        assert weighted_digit_sum(2, g) == 4

    @pytest.mark.parametrize("b", [2, 3, 5])
    def test_finite_support_matches_direct_sum(self, b):
        table = {m: Fraction(m**2 - 3 * m + 1, 7) for m in range(1, 30)}
        g = SequenceFn(eval=lambda m: table.get(m, Fraction(0)), support_bound=30)
        want = sum(digit_sum(m, b) * v for m, v in table.items())
        assert weighted_digit_sum(b, g) == want

    def test_requires_declaration(self):
        with pytest.raises(ValueError):
            weighted_digit_sum(2, SequenceFn(eval=lambda n: 0.0))


class TestBaseRelationCheck:
    def test_indicator_window(self):
        g = SequenceFn(eval=lambda n: 1 if 1 <= n <= 15 else 0, support_bound=16)
        report = base_relation_check(2, g)
        assert report.passed and report.lhs == report.rhs
        assert report.identity_id == "base-relation"

    def test_base_three_float_sequence(self):
        g = SequenceFn(
            eval=lambda n: 1.0 / (n + 1.0) ** 2 if n <= 81 else 0.0,
            support_bound=82,
        )
        report = base_relation_check(3, g)
        assert report.passed and report.rel_err <= 1e-12

    def test_zero_sequence(self):
        g = SequenceFn(eval=lambda n: 0, support_bound=5)
        report = base_relation_check(2, g)
        assert report.passed and report.lhs == 0.0 and report.rhs == 0.0

    def test_requires_finite_support(self):
        with pytest.raises(ValueError):
            base_relation_check(2, reciprocal_product())


class TestSolveImplicitFinite:
    def test_window_solution_layers(self):
        # distinct powers of two make every g-contribution identifiable
        f = solve_implicit_finite(4, lambda m: 1 << m)
        assert f[3] == sum(1 << m for m in (3, 6, 7, 12, 13, 14, 15))
        assert f[7] == (1 << 7) + (1 << 14) + (1 << 15)
        assert f[1] == sum(1 << m for m in range(1, 16))
        assert all(f[m] == 1 << m for m in range(8, 16))

    def test_accepts_sequence_fn(self):
        g = SequenceFn(eval=lambda m: m, support_bound=8)
        assert solve_implicit_finite(3, g)[4] == 4

    @given(values=st.lists(st.integers(-9, 9), min_size=15, max_size=15))
    @settings(max_examples=40, deadline=None)
    def test_window_fixed_point(self, values):
        table = {m + 1: Fraction(v, 5) for m, v in enumerate(values)}
        f = solve_implicit_finite(4, lambda m: table[m])
        for n in range(1, 8):
            assert table[n] == f[n] - f[2 * n] - f[2 * n + 1]
        for n in range(8, 16):
            assert table[n] == f[n]

    def test_rejects_empty_window(self):
        with pytest.raises(ValueError):
            solve_implicit_finite(0, lambda m: m)


class TestFiniteWeightedSum:
    def test_all_ones_counts_digit_sums(self):
        assert finite_weighted_sum(3, lambda n: 1) == 12

    def test_reciprocal_matches_direct(self):
        got = finite_weighted_sum(4, lambda n: 1.0 / n)
        want = sum(digit_sum(n, 2) / n for n in range(1, 16))
        assert got == pytest.approx(want, rel=1e-12)

    def test_single_cell(self):
        assert finite_weighted_sum(1, lambda n: 7.5) == 7.5

    @given(values=st.lists(st.integers(-20, 20), min_size=63, max_size=63))
    @settings(max_examples=20, deadline=None)
    def test_exact_rational_window(self, values):
        table = {m + 1: Fraction(v, 11) for m, v in enumerate(values)}
        got = finite_weighted_sum(6, lambda m: table[m])
        want = sum(Fraction(digit_sum(n, 2)) * table[n] for n in range(1, 64))
        assert got == want

    @pytest.mark.parametrize("z", [0.0, 0.5])
    def test_partial_fraction_bridge(self, z):
        # 1/((z+n)(z+n+1)) is the difference of first powers, so the window
        # sum equals the order-one finite difference-kernel sum
        got = finite_weighted_sum(5, lambda n: 1.0 / ((z + n) * (z + n + 1.0)))
        want = finite_zeta_diff_direct(FiniteSumParams(2, 5, 1.0, z))
        assert got == pytest.approx(want, rel=1e-12)


class TestRecoverJInfinity:
    @pytest.mark.parametrize("x", [1.0, 0.1, 100.0])
    def test_matches_direct_evaluator(self, x):
        report = recover_j_infinity_check(x)
        assert report.passed and report.rel_err <= 1e-9

    def test_report_shape(self):
        report = recover_j_infinity_check(2.5)
        assert report.identity_id == "recover-jinfty"
        assert report.params == {"x": 2.5}
        assert report.truncation["terms"] > 0
        assert report.truncation["tail_bound"] >= 0.0

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            recover_j_infinity_check(0.0)
