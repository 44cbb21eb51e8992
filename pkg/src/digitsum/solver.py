"""Inversion of the base-b splitting relation g(n) = f(n) - sum_j f(bn+j):
series solution over dyadic blocks, exact finite-window solution, and the
digit-sum-weighted sums both unlock."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .digitseq import digit_count, digit_sum
from .identities import IdentityReport, j_infinity
from .specfun import DEFAULT_CTX, PrecisionContext, TruncationBudgetError, hurwitz_zeta

__all__ = [
    "SequenceFn",
    "TruncationPolicy",
    "solve_implicit",
    "weighted_digit_sum",
    "base_relation_check",
    "solve_implicit_finite",
    "finite_weighted_sum",
    "recover_j_infinity_check",
]


@dataclass(frozen=True)
class SequenceFn:
    """A sequence on the positive integers with declared summability.

    decay promises |g(n)| <= C * n^-beta with beta > 1; partial_sum, when
    supplied, returns sum_{t=a}^{c-1} g(t) in closed form so whole blocks
    cost O(1).
    """

    eval: Callable
    support_bound: Optional[int] = None
    decay: Optional[tuple[float, float]] = None
    partial_sum: Optional[Callable] = None

    def __post_init__(self) -> None:
        if self.support_bound is not None and self.support_bound < 1:
            raise ValueError("support_bound must be >= 1")
        if self.decay is not None:
            c, beta = self.decay
            if not (c > 0 and beta > 1):
                raise ValueError("decay needs C > 0 and beta > 1")

    def block(self, lo: int, hi: int):
        if self.partial_sum is not None:
            return self.partial_sum(lo, hi)
        total = 0
        for t in range(lo, hi):
            total = total + self.eval(t)
        return total


@dataclass(frozen=True)
class TruncationPolicy:
    k_max: int = 60
    term_tol: Optional[float] = None  # falls back to the context rel_tol

    def __post_init__(self) -> None:
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        if self.term_tol is not None and not self.term_tol > 0:
            raise ValueError("term_tol must be positive")


_DEFAULT_POLICY = TruncationPolicy()


def solve_implicit(
    b: int,
    g: SequenceFn,
    n: int,
    policy: TruncationPolicy = _DEFAULT_POLICY,
    ctx: PrecisionContext = DEFAULT_CTX,
):
    """f(n) = sum_{k>=0} sum_{l<b^k} g(b^k n + l), the series inverse of
    g(n) = f(n) - sum_{j<b} f(bn+j)."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    if g.support_bound is not None:
        bound = g.support_bound
        total = 0
        k = 0
        while b**k * n < bound:
            lo = b**k * n
            hi = min(b**k * (n + 1), bound)
            total = total + g.block(lo, hi)
            k += 1
        return total
    if g.decay is None:
        raise ValueError("g needs support_bound or decay for the series solution")
    c, beta = g.decay
    ratio = float(b) ** (1.0 - beta)
    tol = policy.term_tol if policy.term_tol is not None else ctx.rel_tol
    scale_floor = c * float(n) ** (-beta)
    total = 0.0
    spent = 0
    for k in range(policy.k_max + 1):
        lo = b**k * n
        hi = b**k * (n + 1)
        if g.partial_sum is None:
            spent += hi - lo
            if spent > ctx.max_terms:
                raise TruncationBudgetError(
                    f"direct block summation needs more than {ctx.max_terms} terms",
                    spent,
                    c * float(n) ** (-beta) * ratio**k / (1.0 - ratio),
                )
        total = total + g.block(lo, hi)
        tail = c * float(n) ** (-beta) * ratio ** (k + 1) / (1.0 - ratio)
        if ctx.tail_safety * tail <= tol * max(abs(total), scale_floor):
            return total
    raise TruncationBudgetError(
        f"decay bound not met within k_max={policy.k_max} levels",
        spent,
        c * float(n) ** (-beta) * ratio ** (policy.k_max + 1) / (1.0 - ratio),
    )


def weighted_digit_sum(
    b: int,
    g: SequenceFn,
    policy: TruncationPolicy = _DEFAULT_POLICY,
    ctx: PrecisionContext = DEFAULT_CTX,
    outer_terms: int = 1500,
):
    """sum_{n>=1} (digit sum of n in base b) * g(n), evaluated through the
    series inverse as sum_{j=1}^{b-1} j sum_{n>=0} f(bn+j)."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if g.support_bound is not None:
        total = 0
        for j in range(1, b):
            m = j
            n = 0
            while m < g.support_bound:
                total = total + j * solve_implicit(b, g, m, policy, ctx)
                n += 1
                m = b * n + j
        return total
    if g.decay is None:
        raise ValueError("g needs support_bound or decay for the series solution")

    def outer_partial(count: int, start: int, acc):
        for n in range(start, count):
            for j in range(1, b):
                acc = acc + j * solve_implicit(b, g, b * n + j, policy, ctx)
        return acc

    # the outer tail behaves like a power series in 1/M, so two rounds of
    # doubling extrapolation strip the 1/M and 1/M^2 parts
    m0 = outer_terms
    s1 = outer_partial(m0, 0, 0.0)
    s2 = outer_partial(2 * m0, m0, s1)
    s4 = outer_partial(4 * m0, 2 * m0, s2)
    a1 = 2.0 * s2 - s1
    a2 = 2.0 * s4 - s2
    return (4.0 * a2 - a1) / 3.0


def base_relation_check(
    b: int,
    g: SequenceFn,
    N: Optional[int] = None,
    ctx: PrecisionContext = DEFAULT_CTX,
) -> IdentityReport:
    """Both sides of the splitting identity for a finitely supported sequence:
    sum_n s_b(n) (g(n) - sum_{j<b} g(bn+j)) = sum_{j=1}^{b-1} j sum_n g(bn+j)."""
    if g.support_bound is None:
        raise ValueError("the finite relation needs a support_bound")
    top = g.support_bound if N is None else min(N, g.support_bound)
    lhs = 0
    for n in range(1, top):
        inner = g.eval(n)
        for j in range(b):
            m = b * n + j
            if m < top:
                inner = inner - g.eval(m)
        lhs = lhs + digit_sum(n, b) * inner
    rhs = 0
    for j in range(1, b):
        m = j
        n = 0
        while m < top:
            rhs = rhs + j * g.eval(m)
            n += 1
            m = b * n + j
    exact = not (isinstance(lhs, float) or isinstance(rhs, float))
    abs_err = abs(float(lhs) - float(rhs))
    scale = max(abs(float(lhs)), abs(float(rhs)), 1e-300)
    rel_err = abs_err / scale
    passed = (lhs == rhs) if exact else rel_err <= 1e-12
    return IdentityReport(
        identity_id="base-relation",
        params={"base": b, "support": top},
        lhs=float(lhs),
        rhs=float(rhs),
        abs_err=abs_err,
        rel_err=rel_err,
        truncation={"terms": top, "tail_bound": 0.0},
        passed=passed,
    )


def solve_implicit_finite(p: int, g) -> dict:
    """Exact solution on the window [1, 2^p - 1]; with B(n) the binary digit
    count, f(n) = sum_{k=0}^{p-B(n)} sum_{l<2^k} g(2^k n + l)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    evaluate = g.eval if isinstance(g, SequenceFn) else g
    top = 2**p - 1
    table: dict = {}
    for n in range(1, top + 1):
        total = 0
        for k in range(p - digit_count(n, 2) + 1):
            lo = n << k
            for m in range(lo, lo + (1 << k)):
                total = total + evaluate(m)
        table[n] = total
    return table


def finite_weighted_sum(p: int, g):
    """sum_{n=1}^{2^p-1} s_2(n) g(n) through the solved window:
    equals sum_{n<2^(p-1)} f(2n+1)."""
    table = solve_implicit_finite(p, g)
    total = 0
    for n in range(2 ** (p - 1)):
        total = total + table[2 * n + 1]
    return total


def recover_j_infinity_check(
    x: float,
    ctx: PrecisionContext = DEFAULT_CTX,
    rel_tol: float = 1e-9,
) -> IdentityReport:
    """Rebuild the infinite digit-sum bracket sum from the series inverse of
    g(n) = 1/((x+n)(x+n+1)) and compare against the direct evaluator.

    The solved form collapses to
    sum_{k>=0} 2^(-k-2) sum_{n>=1} 1/((w+n-1/2)(w+n)), w = x/2^(k+1).
    """
    if not x > 0:
        raise ValueError("x must be positive")
    inner_terms = 256
    total = 0.0
    terms_used = 0
    tail_bound = 0.0
    for k in range(200):
        w = x / 2.0 ** (k + 1)
        inner = 0.0
        for n in range(1, inner_terms + 1):
            inner += 1.0 / ((w + n - 0.5) * (w + n))
        terms_used += inner_terms
        # remainder past the direct window, expanded in half-integer shifts:
        # sum_{r>=0} 2^-r zeta(r+2, w + M + 1)
        edge = w + inner_terms + 1.0
        for r in range(64):
            piece = 2.0**-r * hurwitz_zeta(r + 2.0, edge, ctx)
            inner += piece
            if piece <= 1e-18 * inner:
                break
        contribution = 2.0 ** (-k - 2) * inner
        total += contribution
        # every remaining inner sum is below the w -> 0 limit of 4 log 2
        tail_bound = 2.0 ** (-k - 2) * (4.0 * math.log(2.0) + 1.0)
        if tail_bound <= 0.05 * ctx.rel_tol * abs(total):
            break
    lhs = total
    rhs = j_infinity(2, x, ctx)
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / max(abs(lhs), abs(rhs), 1e-300)
    return IdentityReport(
        identity_id="recover-jinfty",
        params={"x": x},
        lhs=lhs,
        rhs=rhs,
        abs_err=abs_err,
        rel_err=rel_err,
        truncation={"terms": terms_used, "tail_bound": tail_bound},
        passed=rel_err <= rel_tol,
    )
