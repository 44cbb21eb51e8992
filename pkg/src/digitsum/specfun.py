"""Real special functions used by the closed forms.

Digamma/polygamma, Hurwitz zeta (analytically continued in the order),
Riemann zeta, Dirichlet eta, Stirling beta, log-gamma, Euler beta, the
two-parameter Barnes zeta with its order-2 finite part, exact even-index
Bernoulli numbers, and the complete elliptic integral K.

Everything works in native double precision.  Each evaluator truncates by
an explicit first-omitted-correction estimate controlled by a
PrecisionContext, so accuracy claims are budgeted rather than hoped for.
The polygamma evaluator deliberately does not call the zeta evaluator
(and vice versa): their agreement is used downstream as a cross-check and
must stay non-circular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "PrecisionContext",
    "ZetaArg",
    "BarnesParams",
    "TruncationBudgetError",
    "DEFAULT_CTX",
    "bernoulli_even",
    "digamma",
    "polygamma",
    "hurwitz_zeta",
    "riemann_zeta",
    "dirichlet_eta",
    "stirling_beta",
    "alternating_hurwitz",
    "log_gamma",
    "euler_beta",
    "barnes_zeta2",
    "barnes_psi2_2",
    "elliptic_K",
]

EULER_GAMMA = 0.5772156649015328606


# ---------------------------------------------------------------------------
# Contexts and shared plumbing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrecisionContext:
    """Numerical policy shared by every evaluator in the package."""

    rel_tol: float = 1e-12
    abs_floor: float = 1e-300
    max_terms: int = 10**7
    tail_safety: float = 10.0  # multiplies tail estimates before comparing
    em_order: int = 8  # highest Bernoulli index in asymptotic corrections
    shift_threshold: float = 16.0  # argument size where asymptotics engage

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.em_order < 2 or self.em_order % 2:
            raise ValueError("em_order must be even and >= 2")
        if self.em_order > 60:
            raise ValueError("em_order beyond 60 exceeds the Bernoulli table")
        if self.tail_safety < 1:
            raise ValueError("tail_safety must be >= 1")


DEFAULT_CTX = PrecisionContext()


@dataclass(frozen=True)
class ZetaArg:
    alpha: float  # order; != 1 for Hurwitz evaluation
    z: float  # shift, > 0

    def __post_init__(self) -> None:
        if self.alpha == 1:
            raise ValueError("alpha = 1 is the pole")
        if not self.z > 0:
            raise ValueError("z must be positive")


@dataclass(frozen=True)
class BarnesParams:
    alpha: float
    x: float
    omega1: float
    omega2: float

    def __post_init__(self) -> None:
        if not (self.x > 0 and self.omega1 > 0 and self.omega2 > 0):
            raise ValueError("x, omega1, omega2 must be positive")


class TruncationBudgetError(RuntimeError):
    """Raised when max_terms is exhausted before the tail target is met."""

    def __init__(self, message: str, terms_used: int, tail_estimate: float):
        super().__init__(message)
        self.terms_used = terms_used
        self.tail_estimate = tail_estimate


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact, even index)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _bernoulli_table(limit: int = 64) -> tuple[Fraction, ...]:
    """B_0 .. B_limit as exact rationals via the convolution recurrence."""
    table = [Fraction(1)]
    for m in range(1, limit + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_even(n2: int) -> Fraction:
    """Exact B_{n2} for even n2 with 2 <= n2 <= 64."""
    if n2 % 2 or not 2 <= n2 <= 64:
        raise ValueError("bernoulli_even requires even n2 with 2 <= n2 <= 64")
    return _bernoulli_table()[n2]


@lru_cache(maxsize=1)
def _bernoulli_float() -> tuple[float, ...]:
    return tuple(float(b) for b in _bernoulli_table())


# ---------------------------------------------------------------------------
# Digamma and polygamma
# ---------------------------------------------------------------------------


def digamma(z: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """psi(z) for z > 0: upward recurrence, then Bernoulli asymptotics."""
    if not z > 0:
        raise ValueError("digamma requires z > 0")
    bern = _bernoulli_float()
    half = ctx.em_order // 2
    target = ctx.shift_threshold
    while True:
        shift = 0.0
        w = z
        while w < target:
            shift += 1.0 / w
            w += 1.0
        value = math.log(w) - 0.5 / w
        w2 = w * w
        wp = w2
        for m in range(1, half + 1):
            value -= bern[2 * m] / (2 * m * wp)
            wp *= w2
        omitted = abs(bern[2 * half + 2]) / ((2 * half + 2) * wp)
        value -= shift
        if ctx.tail_safety * omitted <= ctx.rel_tol * max(abs(value), ctx.abs_floor):
            return value
        target *= 2.0


def polygamma(m: int, z: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """psi^(m)(z) for m >= 1, z > 0.

    Upward recurrence psi^(m)(z) = psi^(m)(z+1) - (-1)^m m! z^(-m-1) until
    the Bernoulli asymptotic series is dominated by round-off, not
    truncation.  No zeta call anywhere: the psi^(m) = (-1)^(m+1) m!
    zeta(m+1, .) relation stays an independent cross-check.
    """
    if m < 1:
        raise ValueError("polygamma requires m >= 1")
    if not z > 0:
        raise ValueError("polygamma requires z > 0")
    bern = _bernoulli_float()
    half = ctx.em_order // 2
    fact_m = math.factorial(m)
    fact_m1 = math.factorial(m - 1)
    # first omitted correction, relative to the leading (m-1)!/w^m term:
    #   B_{2h+2} (2h+1+m)! / ((2h+2)! (m-1)!) / w^(2h+2)  with h = half
    ratio_coeff = (
        abs(bern[2 * half + 2])
        * math.factorial(2 * half + 1 + m)
        / (math.factorial(2 * half + 2) * fact_m1)
    )
    need = (ratio_coeff * ctx.tail_safety / ctx.rel_tol) ** (1.0 / (2 * half + 2))
    target = max(ctx.shift_threshold, need)

    sign_m = -1.0 if m % 2 else 1.0  # (-1)^m
    shift = 0.0
    w = z
    while w < target:
        shift += sign_m * fact_m * w ** (-m - 1)
        w += 1.0
    # asymptotic: psi^(m)(w) = (-1)^(m-1) [ (m-1)!/w^m + m!/(2 w^(m+1))
    #   + sum_k B_{2k} (2k+m-1)!/((2k)! w^(2k+m)) ]
    series = fact_m1 / w**m + fact_m / (2.0 * w ** (m + 1))
    for k in range(1, half + 1):
        series += (
            bern[2 * k]
            * math.factorial(2 * k + m - 1)
            / (math.factorial(2 * k) * w ** (2 * k + m))
        )
    asymptotic = -sign_m * series  # (-1)^(m-1) = -(-1)^m
    return asymptotic - shift


# ---------------------------------------------------------------------------
# Hurwitz zeta and friends
# ---------------------------------------------------------------------------


def hurwitz_zeta(alpha: float, z: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """zeta(alpha, z) for alpha > 0, alpha != 1, z > 0 by Euler-Maclaurin.

    Direct sum over z..z+N-1, integral term w^(1-alpha)/(alpha-1) at
    w = z+N, half term, and Bernoulli corrections up to ctx.em_order.  N
    grows until the first omitted correction clears rel_tol; for
    alpha in (0,1) this is the analytic continuation.
    """
    if alpha == 1:
        raise ValueError("hurwitz_zeta has a pole at alpha = 1")
    if not alpha > 0:
        raise ValueError("hurwitz_zeta requires alpha > 0")
    if not z > 0:
        raise ValueError("hurwitz_zeta requires z > 0")
    bern = _bernoulli_float()
    half = ctx.em_order // 2

    direct = 0.0
    n_used = 0
    w = z
    target = ctx.shift_threshold
    while True:
        while w < target:
            direct += w ** (-alpha)
            w += 1.0
            n_used += 1
            if n_used > ctx.max_terms:
                raise TruncationBudgetError(
                    "hurwitz_zeta direct sum exhausted max_terms",
                    n_used,
                    w ** (1.0 - alpha) / abs(alpha - 1.0),
                )
        value = direct + w ** (1.0 - alpha) / (alpha - 1.0) + 0.5 * w ** (-alpha)
        poch = alpha
        wp = w ** (-alpha - 1.0)
        for j in range(1, half + 1):
            value += bern[2 * j] / math.factorial(2 * j) * poch * wp
            poch *= (alpha + 2 * j - 1) * (alpha + 2 * j)
            wp /= w * w
        omitted = abs(bern[2 * half + 2]) / math.factorial(2 * half + 2) * poch * wp
        if ctx.tail_safety * omitted <= ctx.rel_tol * max(abs(value), ctx.abs_floor):
            return value
        target *= 2.0


def riemann_zeta(alpha: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    if alpha == 1:
        raise ValueError("riemann_zeta has a pole at alpha = 1")
    return hurwitz_zeta(alpha, 1.0, ctx)


def dirichlet_eta(alpha: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """eta(alpha) = (1 - 2^(1-alpha)) zeta(alpha); eta(1) = ln 2."""
    if not alpha > 0:
        raise ValueError("dirichlet_eta requires alpha > 0")
    if alpha == 1:
        return math.log(2.0)
    return (1.0 - 2.0 ** (1.0 - alpha)) * hurwitz_zeta(alpha, 1.0, ctx)


def stirling_beta(x: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """beta(x) = (psi((x+1)/2) - psi(x/2)) / 2 for x > 0."""
    if not x > 0:
        raise ValueError("stirling_beta requires x > 0")
    return 0.5 * (digamma((x + 1.0) / 2.0, ctx) - digamma(x / 2.0, ctx))


def alternating_hurwitz(
    alpha: float, w: float, ctx: PrecisionContext = DEFAULT_CTX
) -> float:
    """sum_{n>=1} (-1)^n / (w+n)^alpha for alpha > 0, w > 0.

    Splitting the sum into even and odd n gives
    2^(-alpha) [zeta(alpha, w/2 + 1) - zeta(alpha, (w+1)/2)]; the even/odd
    split fixes the bracket order (checked against the direct alternating
    sum in the tests).
    """
    if not alpha > 0:
        raise ValueError("alternating_hurwitz requires alpha > 0")
    if not w > 0:
        raise ValueError("alternating_hurwitz requires w > 0")
    if alpha == 1.0:
        # telescoped even/odd split; the zeta poles cancel in the bracket
        return 0.5 * (digamma((w + 1.0) / 2.0, ctx) - digamma(w / 2.0 + 1.0, ctx))
    return 2.0 ** (-alpha) * (
        hurwitz_zeta(alpha, w / 2.0 + 1.0, ctx) - hurwitz_zeta(alpha, (w + 1.0) / 2.0, ctx)
    )


# ---------------------------------------------------------------------------
# Log-gamma and Euler beta
# ---------------------------------------------------------------------------

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(z: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """ln Gamma(z) for z > 0: recurrence past shift_threshold, then Stirling."""
    if not z > 0:
        raise ValueError("log_gamma requires z > 0")
    bern = _bernoulli_float()
    half = ctx.em_order // 2
    target = ctx.shift_threshold
    while True:
        log_shift = 0.0
        w = z
        while w < target:
            log_shift += math.log(w)
            w += 1.0
        value = (w - 0.5) * math.log(w) - w + _HALF_LOG_2PI
        wp = w
        for m in range(1, half + 1):
            value += bern[2 * m] / ((2 * m) * (2 * m - 1) * wp)
            wp *= w * w
        omitted = abs(bern[2 * half + 2]) / ((2 * half + 2) * (2 * half + 1) * wp)
        value -= log_shift
        if ctx.tail_safety * omitted <= ctx.rel_tol * max(abs(value), 1.0):
            return value
        target *= 2.0


def euler_beta(a: float, b: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b) via log_gamma."""
    if not (a > 0 and b > 0):
        raise ValueError("euler_beta requires positive arguments")
    return math.exp(log_gamma(a, ctx) + log_gamma(b, ctx) - log_gamma(a + b, ctx))


# ---------------------------------------------------------------------------
# Barnes double zeta
# ---------------------------------------------------------------------------


def barnes_zeta2(params: BarnesParams, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """zeta_2(alpha; x; (omega1, omega2)) = sum_{m1,m2>=0} (x+omega1 m1+omega2 m2)^(-alpha).

    Evaluated as a single sum of Hurwitz values along omega1,
    sum_{m2>=0} omega1^(-alpha) zeta(alpha, (x + omega2 m2)/omega1),
    truncated after M outer terms with the remainder restored by the
    Euler-Maclaurin tail in m2 (integral term via the (alpha-1)-Hurwitz
    antiderivative, half term, Bernoulli corrections).  M grows until the
    first omitted correction clears rel_tol.
    """
    a, x, w1, w2 = params.alpha, params.x, params.omega1, params.omega2
    if not a > 2:
        raise ValueError("barnes_zeta2 requires alpha > 2 (order-2 finite part is separate)")
    bern = _bernoulli_float()
    half = ctx.em_order // 2

    # outer terms m2 = 0 .. M-1 summed directly; start M where the scaled
    # argument (x + omega2 M)/omega1 reaches the asymptotic regime
    m_start = max(1, math.ceil((ctx.shift_threshold * w1 - x) / w2))
    direct = 0.0
    m_done = 0
    M = m_start
    while True:
        while m_done < M:
            direct += w1 ** (-a) * hurwitz_zeta(a, (x + w2 * m_done) / w1, ctx)
            m_done += 1
        u = (x + w2 * M) / w1
        tail = w1 ** (1.0 - a) * hurwitz_zeta(a - 1.0, u, ctx) / (w2 * (a - 1.0))
        tail += 0.5 * w1 ** (-a) * hurwitz_zeta(a, u, ctx)
        poch = a
        for j in range(1, half + 1):
            tail += (
                bern[2 * j]
                / math.factorial(2 * j)
                * poch
                * w2 ** (2 * j - 1)
                / w1 ** (a + 2 * j - 1)
                * hurwitz_zeta(a + 2 * j - 1, u, ctx)
            )
            poch *= (a + 2 * j - 1) * (a + 2 * j)
        omitted = (
            abs(bern[2 * half + 2])
            / math.factorial(2 * half + 2)
            * poch
            * w2 ** (2 * half + 1)
            / w1 ** (a + 2 * half + 1)
            * hurwitz_zeta(a + 2 * half + 1, u, ctx)
        )
        value = direct + tail
        if ctx.tail_safety * omitted <= ctx.rel_tol * max(abs(value), ctx.abs_floor):
            return value
        M *= 2
        if M > ctx.max_terms:
            raise TruncationBudgetError(
                "barnes_zeta2 outer sum exhausted max_terms", m_done, abs(tail)
            )


def barnes_psi2_2(
    z: float,
    omega1: float,
    omega2: float,
    ctx: PrecisionContext = DEFAULT_CTX,
) -> float:
    """Finite part of the order-2 pole of the two-parameter Barnes zeta.

    Computed from the regularized representation
        -(1/(omega1 omega2)) (1 + log(omega2) + psi(z/omega2))
        + sum_{m>=0} [ zeta(2, (z+omega2 m)/omega1) / omega1^2
                       - 1/(omega1 (z+omega2 m)) ],
    whose m-tail from M onward is summed in closed form through the
    zeta(2, u) - 1/u = 1/(2u^2) + sum_j B_{2j} u^(-1-2j) expansion:
        (1/(2 omega2^2)) zeta(2, z/omega2 + M)
        + sum_j B_{2j} omega1^(2j-1)/omega2^(2j+1) zeta(2j+1, z/omega2 + M).
    The representation is symmetric under omega1 <-> omega2 (a test
    checks this), and at omega1 = omega2 = 1 it collapses to
    -psi(z) + (1-z) psi'(z).
    """
    if not (z > 0 and omega1 > 0 and omega2 > 0):
        raise ValueError("barnes_psi2_2 requires positive arguments")
    bern = _bernoulli_float()
    half = ctx.em_order // 2

    base = -(1.0 + math.log(omega2) + digamma(z / omega2, ctx)) / (omega1 * omega2)
    m_start = max(1, math.ceil((ctx.shift_threshold * omega1 - z) / omega2))
    direct = 0.0
    m_done = 0
    M = m_start
    inv_w1sq = 1.0 / (omega1 * omega1)
    while True:
        while m_done < M:
            arg = z + omega2 * m_done
            direct += inv_w1sq * hurwitz_zeta(2.0, arg / omega1, ctx) - 1.0 / (
                omega1 * arg
            )
            m_done += 1
        v = z / omega2 + M
        tail = 0.5 / (omega2 * omega2) * hurwitz_zeta(2.0, v, ctx)
        for j in range(1, half + 1):
            tail += (
                bern[2 * j]
                * omega1 ** (2 * j - 1)
                / omega2 ** (2 * j + 1)
                * hurwitz_zeta(2 * j + 1.0, v, ctx)
            )
        omitted = (
            abs(bern[2 * half + 2])
            * omega1 ** (2 * half + 1)
            / omega2 ** (2 * half + 3)
            * hurwitz_zeta(2 * half + 3.0, v, ctx)
        )
        value = base + direct + tail
        if ctx.tail_safety * omitted <= ctx.rel_tol * max(abs(value), ctx.abs_floor):
            return value
        M *= 2
        if M > ctx.max_terms:
            raise TruncationBudgetError(
                "barnes_psi2_2 m-sum exhausted max_terms", m_done, abs(tail)
            )


# ---------------------------------------------------------------------------
# Elliptic integral
# ---------------------------------------------------------------------------


def elliptic_K(k: float, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """Complete elliptic integral K(k), 0 < k < 1, by AGM iteration."""
    if not 0.0 < k < 1.0:
        raise ValueError("elliptic_K requires 0 < k < 1")
    a = 1.0
    g = math.sqrt(1.0 - k * k)
    for _ in range(64):  # quadratic convergence; 64 is far beyond need
        if abs(a - g) <= ctx.rel_tol * a:
            break
        a, g = 0.5 * (a + g), math.sqrt(a * g)
    return math.pi / (2.0 * a)
