"""Digit-sum sequences and 2-adic companions.

Integer-exact building blocks: base-b digit sums, digit counts, 2-adic
valuations, the Thue-Morse sign, and the classical factorial-valuation
identities that tie them together.  Everything here works on arbitrary-size
Python integers; the vectorized range helpers use numpy int64 and are only
meant for the bulk scans in the verification harness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "digit_sum",
    "digit_count",
    "valuation2",
    "delta_digit_sum",
    "thue_morse_sign",
    "power2_indicator",
    "LegendreChecks",
    "legendre_checks",
    "digit_sum_range",
    "valuation2_range",
]


def digit_sum(n: int, b: int = 2) -> int:
    """Sum of the base-b digits of n (0 for n = 0)."""
    if n < 0:
        raise ValueError("digit_sum requires n >= 0")
    if b < 2:
        raise ValueError("digit_sum requires base >= 2")
    total = 0
    while n:
        n, r = divmod(n, b)
        total += r
    return total


def digit_count(n: int, b: int = 2) -> int:
    """Number of base-b digits of n, i.e. floor(log_b n) + 1.

    Computed by repeated division; float log would round wrong at exact
    powers of b.
    """
    if n < 1:
        raise ValueError("digit_count requires n >= 1")
    if b < 2:
        raise ValueError("digit_count requires base >= 2")
    d = 0
    while n:
        n //= b
        d += 1
    return d


def valuation2(n: int) -> int:
    """2-adic valuation: the largest e with 2^e dividing n (n >= 1)."""
    if n < 1:
        raise ValueError("valuation2 requires n >= 1")
    # int.bit_length-free formulation: (n & -n) isolates the lowest set bit
    return (n & -n).bit_length() - 1


def delta_digit_sum(n: int, b: int = 2) -> int:
    """First difference digit_sum(n+1, b) - digit_sum(n, b)."""
    return digit_sum(n + 1, b) - digit_sum(n, b)


def thue_morse_sign(n: int) -> int:
    """(-1)**digit_sum(n, 2), the +/-1 Thue-Morse sequence."""
    return -1 if digit_sum(n, 2) & 1 else 1


def power2_indicator(n: int) -> int:
    """1 if n is a power of two (n >= 1), else 0."""
    if n < 1:
        raise ValueError("power2_indicator requires n >= 1")
    return 1 if n & (n - 1) == 0 else 0


@dataclass(frozen=True)
class LegendreChecks:
    """Outcome of the two factorial-valuation identities at a single n."""

    n: int
    lhs_valuation_identity: bool  # delta_digit_sum(n-1, 2) + valuation2(n) == 1
    lhs_factorial_identity: bool  # valuation2(n!) + digit_sum(n, 2) == n


def legendre_checks(n: int) -> LegendreChecks:
    """Check the valuation difference identity and Legendre's formula at n.

    valuation2(n!) is accumulated as sum(valuation2(k) for k <= n), not via
    n - digit_sum(n, 2), so the second check is non-circular.
    """
    if n < 1:
        raise ValueError("legendre_checks requires n >= 1")
    val_identity = delta_digit_sum(n - 1, 2) + valuation2(n) == 1
    v_factorial = sum(valuation2(k) for k in range(1, n + 1))
    fact_identity = v_factorial + digit_sum(n, 2) == n
    return LegendreChecks(n, val_identity, fact_identity)


# ---------------------------------------------------------------------------
# Vectorized range scans (harness-scale bulk checks)
# ---------------------------------------------------------------------------


def digit_sum_range(limit: int, b: int = 2) -> np.ndarray:
    """Array of digit_sum(n, b) for n = 0 .. limit-1 (int64).

    Repeated divmod passes over the whole range; limit must fit comfortably
    in int64.
    """
    if limit < 1:
        raise ValueError("digit_sum_range requires limit >= 1")
    if b < 2:
        raise ValueError("digit_sum_range requires base >= 2")
    work = np.arange(limit, dtype=np.int64)
    out = np.zeros(limit, dtype=np.int64)
    while work.any():
        out += work % b
        work //= b
    return out


def valuation2_range(limit: int) -> np.ndarray:
    """Array v with v[n] = valuation2(n) for n = 1 .. limit-1 and v[0] = 0."""
    if limit < 1:
        raise ValueError("valuation2_range requires limit >= 1")
    v = np.zeros(limit, dtype=np.int64)
    step = 2
    while step < limit:
        v[step::step] += 1
        step *= 2
    return v
