"""Generating functions of the digit-sum sequence and the integer sequences
tied to them: rank polynomials, a 2-adic Moebius companion, partition-count
convolutions, and a Dirichlet-series bridge."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .digitseq import (
    delta_digit_sum,
    power2_indicator,
    valuation2,
    valuation2_range,
)
from .identities import IdentityReport, build_report
from .specfun import DEFAULT_CTX, PrecisionContext, dirichlet_eta

__all__ = [
    "lambert_gf",
    "lambert_gf_finite",
    "finite_gf_coefficients",
    "rankwise_coefficients",
    "mobius",
    "c_sequence",
    "delta_from_divisors",
    "mobius_inverse_check",
    "PartitionCounts",
    "partition_counts",
    "partition_convolution_check",
    "eta_dirichlet_bridge_check",
]

_PARTITION_BUDGET = 400


# ---------------------------------------------------------------------------
# Power series sum_{n>=1} s_b(n) z^n
# ---------------------------------------------------------------------------


def _rank_kernel(b: int, u: float) -> float:
    """(u - b u^b + (b-1) u^(b+1)) / ((1-u)(1-u^b)), one digit rank's share."""
    ub = u**b
    return (u - b * ub + (b - 1) * u * ub) / ((1.0 - u) * (1.0 - ub))


def lambert_gf(b: int, z: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """sum_{n>=1} s_b(n) z^n for |z| < 1, one closed term per digit rank.

    (1/(1-z)) sum_{l>=0} kernel(z^(b^l)); the levels decay doubly
    exponentially, so the series stops once the next base power underflows
    the working tolerance.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    if not abs(z) < 1.0:
        raise ValueError("lambert_gf requires |z| < 1")
    if z == 0.0:
        return 0.0
    total = 0.0
    l = 0
    while True:
        u = z ** (b**l)
        total += _rank_kernel(b, u)
        # the next level contributes ~ z^(b^(l+1)); stop once it is dust
        nxt = abs(z) ** (b ** (l + 1))
        if 2.0 * nxt <= ctx.rel_tol * max(abs(total), 1.0):
            break
        l += 1
    return total / (1.0 - z)


def _poly_mul(a: list[int], c: list[int]) -> list[int]:
    out = [0] * (len(a) + len(c) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, cj in enumerate(c):
            out[i + j] += ai * cj
    return out


def _poly_eval(coeffs: list[int], z):
    total = 0 if isinstance(z, int) else 0.0
    for c in reversed(coeffs):
        total = total * z + c
    return total


def rankwise_coefficients(b: int, p: int) -> list[list[int]]:
    """Exact rank polynomials: entry l holds sum_{n < b^p} digit_l(n) z^n.

    Each is the product (1 + ... + z^(b^l - 1)) (sum_j j z^(j b^l))
    (sum_m z^(m b^(l+1))); they add up to the finite generating polynomial.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    if p < 1:
        raise ValueError("p must be >= 1")
    polys = []
    for l in range(p):
        block = b**l
        lower = [1] * block
        digits = [0] * (block * (b - 1) + 1)
        for j in range(1, b):
            digits[j * block] = j
        window = [0] * (b**p - block * b + 1)
        for m in range(b ** (p - l - 1)):
            window[m * block * b] = 1
        polys.append(_poly_mul(_poly_mul(lower, digits), window))
    return polys


def finite_gf_coefficients(b: int, p: int) -> list[int]:
    """Coefficients of sum_{n=1}^{b^p-1} s_b(n) z^n from the rank expansion."""
    polys = rankwise_coefficients(b, p)
    coeffs = [0] * (b**p)
    for poly in polys:
        for n, c in enumerate(poly):
            coeffs[n] += c
    return coeffs


def lambert_gf_finite(b: int, p: int, z) -> float:
    """sum_{n=1}^{b^p-1} s_b(n) z^n, valid for every z including |z| > 1.

    ((1 - z^(b^p)) / (1 - z)) sum_{l=0}^{p-1} kernel(z^(b^l)); whenever a
    kernel denominator vanishes (z a root of unity) the exact polynomial is
    evaluated instead.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    if p < 1:
        raise ValueError("p must be >= 1")
    zf = float(z)
    singular = zf == 1.0
    if not singular:
        for l in range(p):
            u = zf ** (b**l)
            if u == 1.0 or u**b == 1.0:
                singular = True
                break
    if singular:
        return float(_poly_eval(finite_gf_coefficients(b, p), zf))
    window = (1.0 - zf ** (b**p)) / (1.0 - zf)
    return window * sum(_rank_kernel(b, zf ** (b**l)) for l in range(p))


# ---------------------------------------------------------------------------
# 2-adic Moebius companion sequence
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """Moebius mu(n) by trial division."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1 if d == 2 else 2
    if m > 1:
        result = -result
    return result


def c_sequence(n: int) -> int:
    """mu(n) for odd n, else 2^(v-1) mu(n / 2^v) with v the 2-adic valuation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = valuation2(n)
    if v == 0:
        return mobius(n)
    return (1 << (v - 1)) * mobius(n >> v)


def delta_from_divisors(n: int) -> int:
    """sum over divisors d of n of (-1)^(n/d + 1) [d is a power of two].

    Only d = 2^j with j <= nu_2(n) contribute; the sum collapses to the
    one-step digit-sum increment at n-1, that is 1 - nu_2(n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    for j in range(valuation2(n) + 1):
        quotient = n >> j
        total += 1 if quotient % 2 else -1
    return total


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius_inverse_check(n: int) -> bool:
    """Does sum_{d|n} c(n/d) * (one-step digit increment at d-1) hit the
    power-of-two indicator of n?"""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = sum(c_sequence(n // d) * delta_digit_sum(d - 1, 2) for d in _divisors(n))
    return total == power2_indicator(n)


# ---------------------------------------------------------------------------
# Partition counts and their convolution with the digit-sum increments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionCounts:
    n: int
    even_parts: int  # partitions of n into an even number of parts
    odd_parts: int  # ... odd number of parts
    power2_in_distinct: int  # power-of-two parts across distinct-part partitions


def _partition_tables(n_max: int) -> tuple[list[int], list[int], list[int]]:
    # parity-tracked unbounded partition DP
    even = [0] * (n_max + 1)
    odd = [0] * (n_max + 1)
    even[0] = 1
    for k in range(1, n_max + 1):
        for m in range(k, n_max + 1):
            # taking one more copy of part k flips the count parity
            even[m] += odd[m - k]
            odd[m] += even[m - k]
    # distinct-part DP carrying the running number of power-of-two parts
    count = [0] * (n_max + 1)
    weighted = [0] * (n_max + 1)
    count[0] = 1
    for k in range(1, n_max + 1):
        bonus = 1 if (k & (k - 1)) == 0 else 0
        for m in range(n_max, k - 1, -1):
            weighted[m] += weighted[m - k] + bonus * count[m - k]
            count[m] += count[m - k]
    return even, odd, weighted


def partition_counts(n: int) -> PartitionCounts:
    """Exact partition statistics used by the convolution identity."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > _PARTITION_BUDGET:
        raise ValueError(f"partition budget is n <= {_PARTITION_BUDGET}")
    even, odd, weighted = _partition_tables(n)
    return PartitionCounts(n, even[n], odd[n], weighted[n])


def partition_convolution_check(n_max: int) -> list[IdentityReport]:
    """Convolve the power-of-two part counts against the parity imbalance.

    sum_{k=1}^{n} P2(k) (even(n-k) - odd(n-k)) equals the one-step digit-sum
    increment at n-1 (equivalently 1 - nu_2(n)); exact integer check.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > _PARTITION_BUDGET:
        raise ValueError(f"partition budget is n <= {_PARTITION_BUDGET}")
    even, odd, weighted = _partition_tables(n_max)
    reports = []
    for n in range(1, n_max + 1):
        conv = sum(weighted[k] * (even[n - k] - odd[n - k]) for k in range(1, n + 1))
        want = delta_digit_sum(n - 1, 2)
        reports.append(
            build_report("partition-conv", {"n": n}, float(conv), float(want), 0.0)
        )
    return reports


# ---------------------------------------------------------------------------
# Dirichlet-series bridge through the alternating zeta
# ---------------------------------------------------------------------------


def _plain_zeta_tail(M: int, s: float) -> tuple[float, float]:
    """sum_{m>M} m^-s as midpoint +- half of an integral bracket."""
    direct = 0.0
    edge = M + 32
    for m in range(M + 1, edge + 1):
        direct += float(m) ** -s
    upper = float(edge) ** (1.0 - s) / (s - 1.0)
    lower = float(edge + 1) ** (1.0 - s) / (s - 1.0)
    return direct + 0.5 * (upper + lower), 0.5 * (upper - lower)


def _increment_series_tail(N: int, s: float) -> tuple[float, float]:
    """Tail of sum (1 - nu_2(n)) n^-s past n = N, via 2-adic layers."""
    mid, half = _plain_zeta_tail(N, s)
    for j in range(1, 64):
        layer_mid, layer_half = _plain_zeta_tail(N >> j, s)
        weight = 2.0 ** (-j * s)
        mid -= weight * layer_mid
        half += weight * layer_half
        if weight * (layer_mid + layer_half) < 1e-18:
            break
    return mid, half


def eta_dirichlet_bridge_check(
    s_grid: list[float], ctx: PrecisionContext = DEFAULT_CTX
) -> list[IdentityReport]:
    """1/(1 - 2^-s) against the increment Dirichlet series over eta(s).

    The left side is the closed power-of-two Dirichlet series; the right side
    sums (1 - nu_2(n)) n^-s directly with integral tail brackets and divides
    by the alternating zeta.
    """
    reports = []
    limit = 1_500_000
    v = valuation2_range(limit).astype(np.float64)
    n = np.arange(limit, dtype=np.float64)
    for s in s_grid:
        if not s > 1.0:
            raise ValueError("bridge check needs s > 1")
        s = float(s)
        partial = float(np.dot(1.0 - v[1:], n[1:] ** -s))
        tail_mid, tail_half = _increment_series_tail(limit - 1, s)
        rhs = (partial + tail_mid) / dirichlet_eta(s, ctx)
        lhs = 1.0 / (1.0 - 2.0**-s)
        tol = 1e-6 if s >= 2.0 else 1e-4
        reports.append(
            build_report(
                "eta-bridge",
                {"s": s},
                lhs,
                rhs,
                tol,
                terms=limit,
                tail_bound=tail_half,
            )
        )
    return reports
