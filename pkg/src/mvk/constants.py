"""Working-precision context and high-precision fundamental constants.

Every constant has two independent algorithms.  The ``const_*``/``*_int``
entry points use the primary one; the alternatives are exposed so tests can
cross-check them against each other.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError

DEFAULT_WORKING_BITS = 256
DEFAULT_GUARD_BITS = 64


@dataclass(frozen=True)
class PrecisionContext:
    """Binary working precision plus guard bits carried internally."""

    working_bits: int = DEFAULT_WORKING_BITS
    guard_bits: int = DEFAULT_GUARD_BITS

    def __post_init__(self):
        if self.working_bits < 64:
            raise DomainError("working_bits must be at least 64")
        if self.guard_bits < 32:
            raise DomainError("guard_bits must be at least 32")

    @classmethod
    def from_env(cls, default: int = DEFAULT_WORKING_BITS) -> PrecisionContext:
        """Honour ``MVK_PREC_BITS`` when set."""
        bits = os.environ.get("MVK_PREC_BITS")
        return cls(int(bits) if bits else default)

    @property
    def total_bits(self) -> int:
        return self.working_bits + self.guard_bits

    @property
    def mp(self) -> mpmath.MPContext:
        """An mpmath context at ``total_bits``; shared per precision, never mutated."""
        return _mp_context(self.total_bits)

    @property
    def tolerance(self):
        return self.mp.ldexp(1, -self.working_bits)


@functools.lru_cache(maxsize=None)
def _mp_context(bits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def _from_fixed(mp, value: int, bits: int):
    return mp.ldexp(mp.mpf(value), -bits)


# ---------------------------------------------------------------------------
# exact rationals

@functools.lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * table[k]
            binom = binom * (m + 1 - k) // (k + 1)
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2)."""
    if n < 0:
        raise DomainError("bernoulli index must be non-negative")
    if n > 1 and n % 2:
        raise DomainError(f"odd bernoulli index {n} > 1 requested")
    size = max(16, 1 << (n.bit_length()))
    return _bernoulli_table(size)[n]


@functools.lru_cache(maxsize=None)
def _euler_table(n: int) -> tuple[int, ...]:
    # E_m = -sum_{k even < m} C(m, k) E_k   (Taylor coefficients of sech)
    table = [1]
    for m in range(2, n + 1, 2):
        table.append(-sum(math.comb(m, 2 * j) * table[j] for j in range(m // 2)))
    return tuple(table)


def euler_number(n: int) -> int:
    """Exact Euler (secant) number E_n for even n."""
    if n < 0 or n % 2:
        raise DomainError("euler_number needs an even non-negative index")
    size = max(16, 1 << (n.bit_length()))
    return _euler_table(size)[n // 2]


# ---------------------------------------------------------------------------
# pi

def _atan_inv_fixed(q: int, bits: int) -> int:
    """atan(1/q) scaled by 2**bits, alternating Taylor series in integers."""
    one = 1 << bits
    power = one // q
    q2 = q * q
    total = 0
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= q2
        k += 1
    return total


@functools.lru_cache(maxsize=64)
def _pi_machin_fixed(bits: int) -> int:
    extra = bits + 16
    value = 16 * _atan_inv_fixed(5, extra) - 4 * _atan_inv_fixed(239, extra)
    return value >> 16


def pi_machin(ctx: PrecisionContext):
    """pi = 16 atan(1/5) - 4 atan(1/239)."""
    bits = ctx.total_bits
    return _from_fixed(ctx.mp, _pi_machin_fixed(bits), bits)


def pi_agm(ctx: PrecisionContext):
    """Gauss-Legendre arithmetic-geometric mean iteration."""
    mp = _mp_context(ctx.total_bits + 16)
    a, b = mp.mpf(1), 1 / mp.sqrt(2)
    t, p = mp.mpf(1) / 4, mp.mpf(1)
    eps = mp.ldexp(1, -ctx.total_bits - 8)
    while abs(a - b) > eps:
        a, b, t, p = (a + b) / 2, mp.sqrt(a * b), t - p * ((a - b) / 2) ** 2, 2 * p
    return ctx.mp.mpf((a + b) ** 2 / (4 * t))


def const_pi(ctx: PrecisionContext):
    return pi_machin(ctx)


# ---------------------------------------------------------------------------
# log 2

@functools.lru_cache(maxsize=64)
def _log2_fixed(bits: int) -> int:
    # log 2 = 2 atanh(1/3) = 2 sum 1 / ((2k+1) 3^(2k+1))
    extra = bits + 16
    power = (1 << extra) // 3
    total = 0
    k = 0
    while power:
        total += power // (2 * k + 1)
        power //= 9
        k += 1
    return (2 * total) >> 16


def log2_atanh(ctx: PrecisionContext):
    bits = ctx.total_bits
    return _from_fixed(ctx.mp, _log2_fixed(bits), bits)


@functools.lru_cache(maxsize=32)
def _cvz_weights(n: int) -> tuple[tuple[Fraction, ...], int]:
    """Exact weights c_k and denominator d of the Cohen-Villegas-Zagier scheme.

    ``sum (-1)^k a_k ~= sum c_k a_k / d`` with error about 5.83^-n; the c_k
    already carry the alternating sign.
    """
    x, y = 1, 0  # (3 + sqrt 8)^n = x + y sqrt 8, and d = x up to 1/(2x)
    for _ in range(n):
        x, y = 3 * x + 8 * y, x + 3 * y
    d = x
    b = Fraction(-1)
    c = Fraction(-d)
    weights = []
    for k in range(n):
        c = b - c
        weights.append(c)
        b = b * 2 * (k + n) * (k - n) / ((2 * k + 1) * (k + 1))
    return tuple(weights), d


def cvz_alternating_sum(mp, terms, n: int):
    """sum_{k>=0} (-1)^k a_k via CVZ acceleration using a_0..a_{n-1}."""
    weights, d = _cvz_weights(n)
    total = mp.fsum(mp.mpf(c.numerator) / c.denominator * terms(k)
                    for k, c in enumerate(weights))
    return total / d


def _cvz_terms_for(bits: int) -> int:
    return int(bits / math.log2(3 + math.sqrt(8))) + 8


def log2_alternating(ctx: PrecisionContext):
    """log 2 = sum (-1)^k / (k+1), CVZ-accelerated."""
    mp = _mp_context(ctx.total_bits + 16)
    n = _cvz_terms_for(ctx.total_bits + 16)
    return ctx.mp.mpf(cvz_alternating_sum(mp, lambda k: mp.mpf(1) / (k + 1), n))


def const_log2(ctx: PrecisionContext):
    return log2_atanh(ctx)


# ---------------------------------------------------------------------------
# zeta(s), beta(s)

def _em_params(bits: int, s: int) -> tuple[int, int]:
    m = -(-bits // 4)
    return m, 2 * m + s + 8


def _hurwitz_tail(mp, s: int, a, m: int):
    """Euler-Maclaurin tail sum_{n>=0} (n+a)^-s without the a^(1-s)/(s-1) term."""
    total = mp.mpf(1) / (2 * a ** s)
    rising = mp.mpf(s)  # s (s+1) ... (s+2k-2)
    a_pow = a ** (-s - 1)
    a_inv2 = 1 / (a * a)
    for k in range(1, m + 1):
        b = bernoulli(2 * k)
        total += mp.mpf(b.numerator) / b.denominator / math.factorial(2 * k) * rising * a_pow
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        a_pow *= a_inv2
    return total


@functools.lru_cache(maxsize=512)
def _zeta_em_cached(s: int, bits: int):
    mp = _mp_context(bits + 16)
    m, n = _em_params(bits, s)
    head = mp.fsum(mp.mpf(k) ** (-s) for k in range(1, n))
    big_n = mp.mpf(n)
    return head + big_n ** (1 - s) / (s - 1) + _hurwitz_tail(mp, s, big_n, m)


def zeta_em(s: int, ctx: PrecisionContext):
    """zeta(s) by direct summation with an Euler-Maclaurin tail."""
    if s < 2:
        raise DomainError(f"zeta({s}) diverges or is outside the supported range")
    return ctx.mp.mpf(_zeta_em_cached(s, ctx.total_bits))


def zeta_cvz(s: int, ctx: PrecisionContext):
    """zeta(s) = eta(s) / (1 - 2^(1-s)), eta summed with CVZ acceleration."""
    if s < 2:
        raise DomainError(f"zeta({s}) diverges or is outside the supported range")
    mp = _mp_context(ctx.total_bits + 16)
    n = _cvz_terms_for(ctx.total_bits + 16)
    eta = cvz_alternating_sum(mp, lambda k: mp.mpf(k + 1) ** (-s), n)
    return ctx.mp.mpf(eta / (1 - mp.ldexp(1, 1 - s)))


def zeta_int(s: int, ctx: PrecisionContext):
    return zeta_em(s, ctx)


@functools.lru_cache(maxsize=512)
def _beta_em_cached(s: int, bits: int):
    mp = _mp_context(bits + 16)
    m, n = _em_params(bits, s)
    head = mp.fsum(mp.mpf(4 * k + 1) ** (-s) - mp.mpf(4 * k + 3) ** (-s) for k in range(n))
    a1 = mp.mpf(n) + mp.mpf(1) / 4
    a3 = mp.mpf(n) + mp.mpf(3) / 4
    if s == 1:
        lead = mp.log(a3 / a1)
    else:
        lead = (a1 ** (1 - s) - a3 ** (1 - s)) / (s - 1)
    tail = lead + _hurwitz_tail(mp, s, a1, m) - _hurwitz_tail(mp, s, a3, m)
    return head + tail / mp.mpf(4) ** s


def beta_em(s: int, ctx: PrecisionContext):
    """beta(s) = 4^-s (zeta(s,1/4) - zeta(s,3/4)), Hurwitz tails by Euler-Maclaurin."""
    if s < 1:
        raise DomainError(f"beta({s}) is outside the supported range")
    return ctx.mp.mpf(_beta_em_cached(s, ctx.total_bits))


def beta_cvz(s: int, ctx: PrecisionContext):
    """beta(s) = sum (-1)^k / (2k+1)^s with CVZ acceleration."""
    if s < 1:
        raise DomainError(f"beta({s}) is outside the supported range")
    mp = _mp_context(ctx.total_bits + 16)
    n = _cvz_terms_for(ctx.total_bits + 16)
    return ctx.mp.mpf(cvz_alternating_sum(mp, lambda k: mp.mpf(2 * k + 1) ** (-s), n))


def beta_int(s: int, ctx: PrecisionContext):
    return beta_em(s, ctx)


def zeta_alt_int(s: int, ctx: PrecisionContext):
    """Alternating zeta(s bar) = sum (-1)^n / n^s = -(1 - 2^(1-s)) zeta(s); s = 1 gives -log 2."""
    if s < 1:
        raise DomainError(f"alternating zeta({s}) is outside the supported range")
    if s == 1:
        return -const_log2(ctx)
    mp = ctx.mp
    return -(1 - mp.ldexp(1, 1 - s)) * zeta_int(s, ctx)
