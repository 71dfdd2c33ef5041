"""Fast evaluation of convergent iterated integrals I(1; a_1..a_n; 0).

The path from 0 to 1 is split at 1/2 (Hoelder convolution)::

    I(1; w; 0) = sum_k I(1; a_1..a_k; 1/2) I(1/2; a_{k+1}..a_n; 0)

and ``I(1; a_1..a_k; 1/2) = (-1)^k I(1/2; 1-a_k, .., 1-a_1; 0)``.  Every piece
is then the power series of ``I(z; b; 0)`` summed at ``z = 1/2``; rescaling the
letters by 2 turns that into a plain coefficient sum that converges like
``2^-n`` for the alphabet {0, +-1, +-i}.  Coefficients are Gaussian integers
in fixed point (scaled by ``2^bits``), so no floating point enters.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, DivergentIndex, DomainError
from .gaussian import GaussQ, ONE, ZERO

_TWO = GaussQ(2)


@dataclass(frozen=True)
class FixedResult:
    """Fixed-point complex value (re, im scaled by 2^bits) with an error bound in ulps."""

    re: int
    im: int
    err_ulps: int
    bits: int
    terms: int


def _letter_inverse(a: GaussQ) -> tuple[int, int, int]:
    """Return (p, q, d) with 1/a = (p + i q) / d in lowest integer terms."""
    inv = a.inverse()
    d = math.lcm(inv.re.denominator, inv.im.denominator)
    return int(inv.re * d), int(inv.im * d), d


class _Series:
    __slots__ = ("re", "im")

    def __init__(self, re: list[int], im: list[int]):
        self.re = re
        self.im = im


class WordEvaluator:
    """Evaluates words at a fixed precision, memoising series of shared suffixes.

    Instances are cheap but not thread-safe; use :func:`evaluator_for` to get
    a per-thread instance.
    """

    def __init__(self, bits: int, max_length: int = 24, rate_bits: float = 1.0):
        self.bits = bits
        self.max_length = max_length
        self.terms = int(math.ceil((bits + 4 * max_length + 48) / rate_bits))
        self._series: dict[tuple[GaussQ, ...], _Series] = {}
        self._values: dict[tuple[GaussQ, ...], FixedResult] = {}

    # -- series of I(1; b; 0) with coefficients c_n (value = sum c_n) --------
    def _series_of(self, word: tuple[GaussQ, ...]) -> _Series:
        cached = self._series.get(word)
        if cached is not None:
            return cached
        n_terms = self.terms
        if not word:
            re = [0] * (n_terms + 1)
            im = [0] * (n_terms + 1)
            re[0] = 1 << self.bits
            series = _Series(re, im)
        else:
            inner = self._series_of(word[1:])
            series = self._prepend(word[0], inner)
        if len(self._series) > 4096:
            self._series.clear()
        self._series[word] = series
        return series

    def _prepend(self, a: GaussQ, g: _Series) -> _Series:
        n_terms = self.terms
        g_re, g_im = g.re, g.im
        f_re = [0] * (n_terms + 1)
        f_im = [0] * (n_terms + 1)
        if not a:
            if g_re[0] or g_im[0]:
                raise DivergentIndex("word ends with the letter 0")
            for n in range(1, n_terms + 1):
                f_re[n] = g_re[n] // n
                f_im[n] = g_im[n] // n
            return _Series(f_re, f_im)
        p, q, d = _letter_inverse(a)
        h_re = h_im = 0
        # H_{n+1} = (H_n - g_n) / a,  f_{n+1} = H_{n+1} / (n + 1)
        if q == 0 and d == 1 and p in (1, -1):
            for n in range(n_terms):
                x = h_re - g_re[n]
                y = h_im - g_im[n]
                if p == 1:
                    h_re, h_im = x, y
                else:
                    h_re, h_im = -x, -y
                f_re[n + 1] = h_re // (n + 1)
                f_im[n + 1] = h_im // (n + 1)
        else:
            for n in range(n_terms):
                x = h_re - g_re[n]
                y = h_im - g_im[n]
                h_re = (x * p - y * q) // d
                h_im = (x * q + y * p) // d
                f_re[n + 1] = h_re // (n + 1)
                f_im[n + 1] = h_im // (n + 1)
        return _Series(f_re, f_im)

    def _half_value(self, word: tuple[GaussQ, ...]) -> tuple[int, int, int]:
        """I(1/2; word; 0) as fixed point plus a tail bound (ulps)."""
        if not word:
            return 1 << self.bits, 0, 0
        scaled = tuple(_TWO * a for a in word)
        s = self._series_of(scaled)
        tail = 4 * max(abs(s.re[-1]) + abs(s.im[-1]), abs(s.re[-2]) + abs(s.im[-2]))
        return sum(s.re), sum(s.im), tail

    def value(self, word: Sequence[GaussQ]) -> FixedResult:
        """Fixed-point value of the convergent word I(1; word; 0)."""
        word = tuple(GaussQ.coerce(a) for a in word)
        cached = self._values.get(word)
        if cached is not None:
            return cached
        conj_key = tuple(a.conjugate() for a in word)
        cached = self._values.get(conj_key)
        if cached is not None:
            res = FixedResult(cached.re, -cached.im, cached.err_ulps, cached.bits, cached.terms)
            self._values[word] = res
            return res
        if len(word) > self.max_length:
            raise DomainError(f"word longer than {self.max_length} letters")
        if word and word[0] == ONE:
            raise DivergentIndex("word starts with the upper bound 1")
        if word and word[-1] == ZERO:
            raise DivergentIndex("word ends with the lower bound 0")
        bits = self.bits
        n = len(word)
        total_re = total_im = 0
        err = 0
        rev_prefix: tuple[GaussQ, ...] = ()
        for k in range(n + 1):
            if k:
                rev_prefix = (ONE - word[k - 1],) + rev_prefix
            a_re, a_im, a_err = self._half_value(rev_prefix)
            if k % 2:
                a_re, a_im = -a_re, -a_im
            b_re, b_im, b_err = self._half_value(word[k:])
            total_re += (a_re * b_re - a_im * b_im) >> bits
            total_im += (a_re * b_im + a_im * b_re) >> bits
            scale_a = (abs(a_re) + abs(a_im)) >> bits
            scale_b = (abs(b_re) + abs(b_im)) >> bits
            err += a_err * (scale_b + 1) + b_err * (scale_a + 1) + 4
        # rounding: each coefficient step loses < 2 ulps, amplified at most by the term count
        err += 4 * (n + 1) * self.terms
        res = FixedResult(total_re, total_im, err, bits, self.terms)
        if len(self._values) > 65536:
            self._values.clear()
        self._values[word] = res
        return res


def convergence_rate_bits(word: Sequence[GaussQ]) -> float:
    """log2 of the geometric rate of the split-at-1/2 series for this word."""
    worst = math.inf
    for a in word:
        for b in (a, ONE - a):
            if b:
                worst = min(worst, math.log2(2 * math.sqrt(float(b.norm()))))
    return worst if worst != math.inf else 1.0


_local = threading.local()


def evaluator_for(bits: int, rate_bits: float = 1.0) -> WordEvaluator:
    """Per-thread evaluator cache keyed by precision and convergence rate."""
    pool = getattr(_local, "pool", None)
    if pool is None:
        pool = _local.pool = {}
    key = (bits, round(rate_bits, 6))
    ev = pool.get(key)
    if ev is None:
        if rate_bits <= 0.05:
            raise DomainError("word letters too close to the split point 1/2")
        ev = pool[key] = WordEvaluator(bits, rate_bits=rate_bits)
    return ev


def evaluate_word_fixed(word: Sequence[GaussQ], bits: int, budget: int | None = None) -> FixedResult:
    word = tuple(GaussQ.coerce(a) for a in word)
    rate = min(1.0, convergence_rate_bits(word))
    ev = evaluator_for(bits, rate)
    if budget is not None and ev.terms > budget:
        raise BudgetExceeded(f"{ev.terms} series terms needed, budget is {budget}")
    return ev.value(word)


def to_fraction_pair(res: FixedResult) -> tuple[Fraction, Fraction]:
    scale = 1 << res.bits
    return Fraction(res.re, scale), Fraction(res.im, scale)
