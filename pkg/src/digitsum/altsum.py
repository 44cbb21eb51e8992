"""Sign-alternating sums over binary digit parity: finite-difference
representations, exact weight tables, and the discrete distribution those
weights define, with closed moment and cumulant formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .digitseq import digit_sum_range
from .specfun import bernoulli_even

__all__ = [
    "WeightTable",
    "DiscretePMF",
    "CumulantSpec",
    "alternating_sum_direct",
    "forward_difference",
    "delta_product_form",
    "alpha_weights",
    "alpha_weights_oracle",
    "alternating_sum_via_weights",
    "polynomial_annihilation_check",
    "zn_pmf",
    "zn_mean_variance",
    "zn_mgf",
    "standardized_cumulant",
    "pmf_standardized_cumulant",
    "limit_cumulant",
    "weights_first_moment",
]

_DIRECT_BUDGET = 30
_OPERATOR_BUDGET = 20
_TABLE_BUDGET = 24
_ORACLE_BUDGET = 12
_CUMULANT_BUDGET = 16


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightTable:
    N: int
    alpha: tuple[int, ...]  # indices 0 .. 2^(N+1) - N - 2

    def __post_init__(self) -> None:
        expected = 2 ** (self.N + 1) - self.N - 1
        if len(self.alpha) != expected:
            raise ValueError(f"weight table for N={self.N} needs {expected} entries")
        if any(a <= 0 for a in self.alpha):
            raise ValueError("weights must be positive")
        if self.alpha != self.alpha[::-1]:
            raise ValueError("weights must be symmetric")
        if sum(self.alpha) != 2 ** (self.N * (self.N + 1) // 2):
            raise ValueError("weights must sum to 2^(N(N+1)/2)")


@dataclass(frozen=True)
class DiscretePMF:
    N: int
    mass: tuple[Fraction, ...]  # support 0 .. 2^(N+1) - N - 2

    def __post_init__(self) -> None:
        if sum(self.mass) != 1:
            raise ValueError("masses must sum to one")
        if any(m < 0 for m in self.mass):
            raise ValueError("masses must be non-negative")


@dataclass(frozen=True)
class CumulantSpec:
    N: int | None  # None selects the large-N limit
    order: int

    def __post_init__(self) -> None:
        if self.order < 2 or self.order % 2:
            raise ValueError("order must be an even integer >= 2 (odd ones vanish)")
        if self.N is not None and self.N < 1:
            raise ValueError("N must be >= 1 or None for the limit")


# ---------------------------------------------------------------------------
# Three routes to the alternating sum
# ---------------------------------------------------------------------------


def alternating_sum_direct(f: Callable, x, N: int):
    """sum_{n=0}^{2^N - 1} (-1)^(binary digit sum of n) f(x + n)."""
    if not 1 <= N <= _DIRECT_BUDGET:
        raise ValueError(f"N must be within [1, {_DIRECT_BUDGET}]")
    parity = digit_sum_range(2**N, 2) & 1
    total = 0
    for n in range(2**N):
        term = f(x + n)
        total = total - term if parity[n] else total + term
    return total


def forward_difference(f: Callable, x, N: int):
    """N-th forward difference sum_{l} C(N,l) (-1)^(N-l) f(x+l), exact binomials."""
    if N < 0:
        raise ValueError("N must be >= 0")
    total = 0
    for l in range(N + 1):
        term = math.comb(N, l) * f(x + l)
        total = total + term if (N - l) % 2 == 0 else total - term
    return total


def delta_product_form(f: Callable, x, N: int):
    """(-1)^N applied to the composed step differences with steps 1,2,...,2^(N-1).

    Each step operator maps g to g(.+k) - g(.); the expansion is accumulated
    as offset/coefficient pairs before f is evaluated.
    """
    if not 1 <= N <= _OPERATOR_BUDGET:
        raise ValueError(f"N must be within [1, {_OPERATOR_BUDGET}]")
    expansion = {0: 1}
    for i in range(N):
        step = 2**i
        grown: dict[int, int] = {}
        for offset, coeff in expansion.items():
            grown[offset + step] = grown.get(offset + step, 0) + coeff
            grown[offset] = grown.get(offset, 0) - coeff
        expansion = grown
    sign = 1 if N % 2 == 0 else -1
    total = 0
    for offset in sorted(expansion):
        total = total + sign * expansion[offset] * f(x + offset)
    return total


# ---------------------------------------------------------------------------
# Exact weight tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _alpha_tuple(N: int) -> tuple[int, ...]:
    # coefficients of prod_{i=0}^{N-1} (1 + x^(2^i))^(N-i), packed into one
    # big integer with a field per coefficient; fields cannot carry into each
    # other because every coefficient is below the total 2^(N(N+1)/2)
    if N == 0:
        return (1,)
    width = N * (N + 1) // 2 + 1
    packed = 1
    for i in range(N):
        shift = (1 << i) * width
        for _ in range(N - i):
            packed += packed << shift
    length = 2 ** (N + 1) - N - 1
    raw = packed.to_bytes((length * width) // 8 + 16, "little")
    mask = (1 << width) - 1
    window = width // 8 + 3
    out = []
    for k in range(length):
        bit = k * width
        byte0 = bit >> 3
        chunk = int.from_bytes(raw[byte0 : byte0 + window], "little")
        out.append((chunk >> (bit & 7)) & mask)
    return tuple(out)


def alpha_weights(N: int) -> WeightTable:
    """Exact weight table from the rank generating polynomial."""
    if not 0 <= N <= _TABLE_BUDGET:
        raise ValueError(f"N must be within [0, {_TABLE_BUDGET}]")
    return WeightTable(N, _alpha_tuple(N))


def _bounded_sum_counts(bounds: Sequence[int]) -> list[int]:
    # number of ways to write k as a sum with the i-th part in [0, bounds[i]]
    counts = [1]
    for bound in bounds:
        out = [0] * (len(counts) + bound)
        window = 0
        for k in range(len(out)):
            if k < len(counts):
                window += counts[k]
            drop = k - bound - 1
            if 0 <= drop < len(counts):
                window -= counts[drop]
            out[k] = window
        counts = out
    return counts


def alpha_weights_oracle(N: int) -> WeightTable:
    """Weights recounted as bounded compositions, part i capped at 2^i - 1."""
    if not 0 <= N <= _ORACLE_BUDGET:
        raise ValueError(f"N must be within [0, {_ORACLE_BUDGET}]")
    if N == 0:
        return WeightTable(0, (1,))
    counts = _bounded_sum_counts([2**i - 1 for i in range(1, N + 1)])
    return WeightTable(N, tuple(counts))


def alternating_sum_via_weights(f: Callable, x, N: int):
    """Weight-table form: (-1)^N sum_k alpha_k^(N-1) times the N-th difference at x+k."""
    if not 1 <= N <= _OPERATOR_BUDGET:
        raise ValueError(f"N must be within [1, {_OPERATOR_BUDGET}]")
    table = _alpha_tuple(N - 1)
    sign = 1 if N % 2 == 0 else -1
    total = 0
    for k, weight in enumerate(table):
        total = total + weight * forward_difference(f, x + k, N)
    return sign * total


def polynomial_annihilation_check(coeffs: Sequence, N: int, x=0) -> bool:
    """Is the alternating sum of the polynomial with these coefficients zero?

    Exact rational evaluation whenever the inputs allow it (floats are taken
    at their exact binary value); otherwise a magnitude-scaled tolerance.
    """
    if not 1 <= N <= _OPERATOR_BUDGET:
        raise ValueError(f"N must be within [1, {_OPERATOR_BUDGET}]")
    exactable = all(isinstance(c, (int, Fraction)) for c in coeffs) and isinstance(
        x, (int, float, Fraction)
    )
    if exactable:
        x_exact = Fraction(x)

        def poly(t):
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * t + c
            return acc

        return alternating_sum_direct(poly, x_exact, N) == 0

    def poly_f(t):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc

    total = alternating_sum_direct(poly_f, float(x), N)
    span = abs(float(x)) + 2.0**N
    scale = sum(abs(float(c)) * span**j for j, c in enumerate(coeffs)) * 2.0**N
    return abs(total) <= 1e-9 * max(scale, 1.0)


# ---------------------------------------------------------------------------
# The weight distribution, its transforms and cumulants
# ---------------------------------------------------------------------------


def zn_pmf(N: int) -> DiscretePMF:
    """Law of a sum of independent uniforms on {0..2^k-1}, k = 1..N, exact."""
    if not 0 <= N <= _TABLE_BUDGET:
        raise ValueError(f"N must be within [0, {_TABLE_BUDGET}]")
    counts = _bounded_sum_counts([2**k - 1 for k in range(1, N + 1)])
    denom = 2 ** (N * (N + 1) // 2)
    return DiscretePMF(N, tuple(Fraction(c, denom) for c in counts))


def zn_mean_variance(N: int) -> tuple[Fraction, Fraction]:
    """Closed mean 2^N - N/2 - 1 and variance (4^N - 3N/4 - 1)/9, exact."""
    if N < 1:
        raise ValueError("N must be >= 1")
    mean = 2**N - Fraction(N, 2) - 1
    variance = Fraction(4**N - 1, 9) - Fraction(N, 12)
    return mean, variance


def _log_expm1_abs(u: float) -> float:
    # log |e^u - 1|, stable across both signs and large magnitudes
    if u > 0.0:
        return u + math.log1p(-math.exp(-u))
    return math.log(-math.expm1(u))


def zn_mgf(z: float, N: int, form: str = "product_over_i") -> float:
    """Moment transform E[e^(z Z_N)], in either closed product form.

    product_over_i: prod_{i<N} ((1+e^(2^i z))/2)^(N-i);
    product_over_k: prod_{k=1..N} 2^(-k) (1-e^(2^k z))/(1-e^z).
    Both run in log space so large 2^N z stays in range.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if z == 0.0:
        return 1.0
    if form == "product_over_i":
        log_total = 0.0
        for i in range(N):
            u = 2.0**i * z
            log_total += (N - i) * (max(u, 0.0) + math.log1p(math.exp(-abs(u))) - math.log(2.0))
        return math.exp(log_total)
    if form == "product_over_k":
        base = _log_expm1_abs(z)
        log_total = 0.0
        for k in range(1, N + 1):
            log_total += _log_expm1_abs(2.0**k * z) - base - k * math.log(2.0)
        return math.exp(log_total)
    raise ValueError("form must be 'product_over_i' or 'product_over_k'")


def standardized_cumulant(N: int, order: int) -> float:
    """Closed even cumulant of the standardized weight distribution.

    (9/(4^N - 3N/4 - 1))^n (B_2n/2n) (4^n (4^(nN) - N - 1) + N)/(4^n - 1)
    for order 2n; reduces to exactly 1 at order 2.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if order < 2 or order % 2 or order > _CUMULANT_BUDGET:
        raise ValueError(f"order must be even within [2, {_CUMULANT_BUDGET}]")
    n = order // 2
    nine_var = Fraction(4) ** N - Fraction(3, 4) * N - 1
    value = (
        Fraction(9) ** n
        / nine_var**n
        * (bernoulli_even(order) / order)
        * (Fraction(4) ** n * (Fraction(4) ** (n * N) - N - 1) + N)
        / (Fraction(4) ** n - 1)
    )
    return float(value)


def _raw_moments(pmf: DiscretePMF, top: int) -> list[Fraction]:
    moments = [Fraction(0)] * (top + 1)
    for k, m in enumerate(pmf.mass):
        power = Fraction(1)
        for j in range(top + 1):
            moments[j] += m * power
            power *= k
    return moments


def pmf_standardized_cumulant(N: int, order: int) -> Fraction:
    """Oracle value: exact cumulant extracted from the pmf, then standardized."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if order < 2 or order > _CUMULANT_BUDGET:
        raise ValueError(f"order must be within [2, {_CUMULANT_BUDGET}]")
    raw = _raw_moments(zn_pmf(N), order)
    cumulants = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        acc = raw[m]
        for j in range(1, m):
            acc -= math.comb(m - 1, j - 1) * cumulants[j] * raw[m - j]
        cumulants[m] = acc
    variance = cumulants[2]
    return cumulants[order] / variance ** (order // 2)


def limit_cumulant(order: int) -> float:
    """Large-N limit of the standardized cumulants: (B_2n/2n) 6^2n/(2^2n - 1)."""
    if order < 2 or order % 2 or order > _CUMULANT_BUDGET:
        raise ValueError(f"order must be even within [2, {_CUMULANT_BUDGET}]")
    value = bernoulli_even(order) / order * Fraction(6) ** order / (2**order - 1)
    return float(value)


def weights_first_moment(N: int) -> Fraction:
    """Mean of the normalized N-1 weight table; equals (2^N - N - 1)/2."""
    if N < 1:
        raise ValueError("N must be >= 1")
    table = _alpha_tuple(N - 1)
    total = sum(k * a for k, a in enumerate(table))
    return Fraction(total, 2 ** ((N - 1) * N // 2))
