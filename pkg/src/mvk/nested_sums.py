"""Numerical oracles for multiple polylogarithms and mixed values.

Two independent routes are provided:

``accelerated``
    Rewrites the value as an iterated integral and sums the split-at-1/2
    power series in fixed point (see :mod:`mvk.wordeval`).  Converges
    geometrically; this is the default.
``direct``
    Brute-force nested summation (extended precision numpy cumulative sums)
    followed by a least-squares fit of the partial sums against the tail model
    ``sum c_ij log(N)^j / N^i``.  Slow to converge but shares no code with the
    accelerated route, so it serves as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .constants import PrecisionContext, const_log2, const_pi
from .errors import BudgetExceeded, DivergentIndex, DomainError
from .gaussian import GaussQ, ONE
from .indices import (
    EV,
    LiIndex,
    MixedIndex,
    S,
    T,
    expand_M_to_li,
    li_letters,
    t_index,
    zeta_index,
)
from .wordeval import convergence_rate_bits, evaluate_word_fixed

ACCELERATED = "accelerated"
DIRECT = "direct"
DEFAULT_BUDGET = 1 << 20
DEFAULT_DIRECT_TOL = 1e-8


@dataclass(frozen=True)
class EvalReport:
    """A numerical value together with an estimate of its absolute error."""

    value: mpmath.mpc
    error_estimate: mpmath.mpf
    terms_used: int
    method: str

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def __str__(self):
        return f"{mpmath.nstr(self.value, 25)} +- {mpmath.nstr(self.error_estimate, 3)} ({self.method}, {self.terms_used} terms)"


def _default_ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return ctx if ctx is not None else PrecisionContext()


def _check_tol(report: EvalReport, tol) -> EvalReport:
    if tol is not None and report.error_estimate > tol:
        raise BudgetExceeded(
            f"error estimate {mpmath.nstr(report.error_estimate, 3)} above tolerance {tol} "
            f"after {report.terms_used} terms")
    return report


# ---------------------------------------------------------------------------
# accelerated route

def eval_word(letters: Sequence[GaussQ], ctx: PrecisionContext | None = None,
              budget: int = DEFAULT_BUDGET) -> EvalReport:
    """Value of the convergent iterated integral I(1; letters; 0)."""
    ctx = _default_ctx(ctx)
    mp = ctx.mp
    res = evaluate_word_fixed(letters, ctx.total_bits, budget)
    scale = mp.ldexp(1, -res.bits)
    return EvalReport(mp.mpc(mp.mpf(res.re) * scale, mp.mpf(res.im) * scale),
                      mp.mpf(res.err_ulps) * scale, res.terms, ACCELERATED)


def _li_accelerated(idx: LiIndex, ctx: PrecisionContext, budget: int) -> EvalReport:
    sign, letters = li_letters(idx)
    if convergence_rate_bits(letters) < 0.5:
        return _li_depth1_geometric(idx, ctx, budget)
    rep = eval_word(letters, ctx, budget)
    return EvalReport(sign * rep.value, rep.error_estimate, rep.terms_used, ACCELERATED)


# ---------------------------------------------------------------------------
# direct route

def _li_depth1_closed_s1(x: GaussQ, ctx: PrecisionContext) -> EvalReport:
    # Li_1(x) = -log(1 - x) on the unit circle away from 1
    mp = ctx.mp
    log2 = const_log2(ctx)
    quarter_pi = const_pi(ctx) / 4
    values = {
        GaussQ(-1): mp.mpc(-log2, 0),
        GaussQ(0, 1): mp.mpc(-log2 / 2, quarter_pi),
        GaussQ(0, -1): mp.mpc(-log2 / 2, -quarter_pi),
    }
    return EvalReport(values[x], mp.mpf(0), 0, DIRECT)


def _li_depth1_geometric(idx: LiIndex, ctx: PrecisionContext, budget: int) -> EvalReport:
    """Plain partial sums of sum x^n / n^s for |x| < 1 with a geometric tail bound."""
    mp = ctx.mp
    x = idx.args[0].to_mpc(mp)
    s = idx.exponents[0]
    r = abs(x)
    if r >= 1:
        raise DomainError("geometric summation needs |x| < 1")
    n_needed = int(math.ceil((ctx.total_bits + 8) / -math.log2(float(r)))) + 1
    if n_needed > budget:
        raise BudgetExceeded(f"{n_needed} terms needed, budget is {budget}")
    total = mp.mpc(0)
    power = mp.mpc(1)
    for n in range(1, n_needed + 1):
        power *= x
        total += power / mp.mpf(n) ** s
    tail = r ** (n_needed + 1) / (1 - r)
    return EvalReport(total, mp.mpf(tail) + mp.ldexp(n_needed, -ctx.total_bits), n_needed, DIRECT)


_UNIT_PATTERN = {
    GaussQ(1): (1, 1, 1, 1),
    GaussQ(-1): (1, -1, 1, -1),
    GaussQ(0, 1): (1, 1j, -1, -1j),
    GaussQ(0, -1): (1, -1j, -1, 1j),
}


def _ladder(n_max: int) -> list[int]:
    points = []
    k = 0
    while True:
        n = 4 * int(n_max / (4 * 2 ** (k / 2)))
        if n < 256:
            break
        if not points or n != points[-1]:
            points.append(n)
        k += 1
    return points


def _nested_partial_sums(weights: list[np.ndarray]) -> np.ndarray:
    """Partial sums V(n) = sum_{n >= m_1 > ... > m_r > 0} prod w_j(m_j)."""
    inner = weights[-1]
    for w in reversed(weights[:-1]):
        acc = np.cumsum(inner)
        shifted = np.empty_like(acc)
        shifted[0] = 0
        shifted[1:] = acc[:-1]
        inner = w * shifted
    return np.cumsum(inner)


def _tail_fit(points: list[int], values: list, depth: int, order: int, mp) -> mpmath.mpf:
    """Least-squares limit of V(n) ~ V + sum_{i<=order, j<depth} c_ij log(n)^j / n^i."""
    n_top = mp.mpf(points[0])
    log_top = mp.log(n_top)
    rows = []
    for n in points:
        n_mp = mp.mpf(n)
        ln = mp.log(n_mp) / log_top
        row = [mp.mpf(1)]
        for i in range(1, order + 1):
            for j in range(depth):
                row.append((n_top / n_mp) ** i * ln ** j)
        rows.append(row)
    a = mp.matrix(rows)
    b = mp.matrix([mp.mpf(v) for v in values])
    sol, _ = mp.qr_solve(a, b)
    return sol[0]


def _extrapolate(partial: np.ndarray, depth: int, n_max: int, ctx: PrecisionContext):
    points = _ladder(n_max)
    if len(points) < 6:
        raise BudgetExceeded("budget too small for tail extrapolation")
    mp = mpmath.MPContext()
    mp.dps = 40
    max_order = max(1, (len(points) - 3) // depth)
    max_order = min(max_order, 6)
    lo_order = max(1, max_order - 1)
    is_complex = np.iscomplexobj(partial)

    def fit(order, use):
        re_vals = [str(np.real(partial[n])) for n in use]
        value = _tail_fit(use, re_vals, depth, order, mp)
        if is_complex:
            im_vals = [str(np.imag(partial[n])) for n in use]
            return mp.mpc(value, _tail_fit(use, im_vals, depth, order, mp))
        return mp.mpc(value, 0)

    best = fit(max_order, points)
    alt = fit(lo_order, points[:-2] if len(points) - 2 > 1 + lo_order * depth else points)
    err = abs(best - alt) * 4 + mp.mpf(n_max) * mp.mpf(2) ** -60
    out = ctx.mp
    return out.mpc(best), out.mpf(err)


def _li_direct(idx: LiIndex, ctx: PrecisionContext, budget: int) -> EvalReport:
    if idx.depth == 1:
        x = idx.args[0]
        if idx.exponents[0] == 1 and x in _UNIT_PATTERN:
            return _li_depth1_closed_s1(x, ctx)
        if x not in _UNIT_PATTERN:
            return _li_depth1_geometric(idx, ctx, budget)
    n_max = 4 * (budget // 4)
    m = np.arange(n_max + 1, dtype=np.longdouble)
    m[0] = 1
    weights = []
    for s, x in zip(idx.exponents, idx.args):
        pattern = np.array(_UNIT_PATTERN[x], dtype=np.clongdouble)
        w = pattern[np.arange(n_max + 1) % 4] / m ** s
        w[0] = 0
        weights.append(w)
    partial = _nested_partial_sums(weights)
    value, err = _extrapolate(partial, idx.depth, n_max, ctx)
    return EvalReport(value, err, n_max, DIRECT)


def _slot_weights(parity: str, sign: int, n_max: int) -> np.ndarray:
    m = np.arange(n_max + 1)
    if parity == EV:
        mask = (m % 2 == 0)
        twist = np.where((m // 2) % 2 == 0, 1, -1) if sign == -1 else 1
    else:
        mask = (m % 2 == 1)
        twist = np.where(((m + 1) // 2) % 2 == 0, 1, -1) if sign == -1 else 1
    return (2 * mask * twist).astype(np.longdouble)


def _M_direct(idx: MixedIndex, ctx: PrecisionContext, budget: int) -> EvalReport:
    n_max = 4 * (budget // 4)
    m = np.arange(n_max + 1, dtype=np.longdouble)
    m[0] = 1
    weights = []
    for s, sign, parity in zip(idx.exponents, idx.signs, idx.parities):
        w = _slot_weights(parity, sign, n_max) / m ** s
        w[0] = 0
        weights.append(w)
    partial = _nested_partial_sums(weights)
    value, err = _extrapolate(partial, idx.depth, n_max, ctx)
    return EvalReport(value, err, n_max, DIRECT)


# ---------------------------------------------------------------------------
# public entry points

def eval_li(idx: LiIndex, ctx: PrecisionContext | None = None, budget: int = DEFAULT_BUDGET,
            method: str = ACCELERATED, tol=None) -> EvalReport:
    """Evaluate Li_{s_1..s_r}(x_1..x_r).

    ``tol`` defaults to ``2^-working_bits`` for the accelerated route and to
    ``1e-8`` for the direct one; exceeding it raises :class:`BudgetExceeded`.
    """
    ctx = _default_ctx(ctx)
    if not idx.convergent:
        raise DivergentIndex(f"{idx} diverges (s_1 = 1, x_1 = 1)")
    if method == ACCELERATED:
        report = _li_accelerated(idx, ctx, budget)
        return _check_tol(report, ctx.tolerance if tol is None else tol)
    if method == DIRECT:
        report = _li_direct(idx, ctx, budget)
        return _check_tol(report, DEFAULT_DIRECT_TOL if tol is None else tol)
    raise DomainError(f"unknown method {method!r}")


def eval_M(idx: MixedIndex, ctx: PrecisionContext | None = None, budget: int = DEFAULT_BUDGET,
           method: str = ACCELERATED, tol=None) -> EvalReport:
    """Evaluate the alternating multiple mixed value M^{eps}_{sigma}(s)."""
    ctx = _default_ctx(ctx)
    if not idx.convergent:
        raise DivergentIndex(f"{idx} diverges (s_1 = 1 with trivial sign)")
    mp = ctx.mp
    if method == DIRECT:
        report = _M_direct(idx, ctx, budget)
        report = EvalReport(mp.mpc(report.value.real, 0), report.error_estimate,
                            report.terms_used, DIRECT)
        return _check_tol(report, DEFAULT_DIRECT_TOL if tol is None else tol)
    if method != ACCELERATED:
        raise DomainError(f"unknown method {method!r}")
    total = mp.mpc(0)
    err = mp.mpf(0)
    terms = 0
    for li_idx, coeff in sorted(expand_M_to_li(idx).items(), key=lambda kv: kv[0].sort_key()):
        rep = _li_accelerated(li_idx, ctx, budget)
        total += coeff.to_mpc(mp) * rep.value
        err += abs(coeff.to_mpc(mp)) * rep.error_estimate
        terms = max(terms, rep.terms_used)
    if abs(total.imag) > err + ctx.tolerance:
        raise DomainError(f"imaginary part {mpmath.nstr(total.imag, 3)} of a real value")
    report = EvalReport(mp.mpc(total.real, 0), err, terms, ACCELERATED)
    return _check_tol(report, ctx.tolerance if tol is None else tol)


def _scaled(report: EvalReport, factor) -> EvalReport:
    return EvalReport(report.value * factor, report.error_estimate * abs(factor),
                      report.terms_used, report.method)


def eval_T(exponents: Sequence[int], signs: Sequence[int] | None = None, ctx=None, **kw) -> EvalReport:
    return eval_M(T(exponents, signs), ctx, **kw)


def eval_S(exponents: Sequence[int], signs: Sequence[int] | None = None, ctx=None, **kw) -> EvalReport:
    return eval_M(S(exponents, signs), ctx, **kw)


def eval_t(exponents: Sequence[int], signs: Sequence[int] | None = None, ctx=None, **kw) -> EvalReport:
    report = eval_M(t_index(exponents, signs), ctx, **kw)
    mp = _default_ctx(ctx).mp
    return _scaled(report, mp.ldexp(1, -len(exponents)))


def eval_zeta(exponents: Sequence[int], signs: Sequence[int] | None = None, ctx=None, **kw) -> EvalReport:
    report = eval_M(zeta_index(exponents, signs), ctx, **kw)
    mp = _default_ctx(ctx).mp
    return _scaled(report, mp.ldexp(1, sum(exponents) - len(exponents)))


def eval_li_combination(combo: dict[LiIndex, GaussQ], ctx: PrecisionContext | None = None,
                        budget: int = DEFAULT_BUDGET, method: str = ACCELERATED) -> EvalReport:
    """Evaluate a Q(i)-linear combination of convergent polylogarithms."""
    ctx = _default_ctx(ctx)
    mp = ctx.mp
    total = mp.mpc(0)
    err = mp.mpf(0)
    terms = 0
    for idx, coeff in combo.items():
        rep = eval_li(idx, ctx, budget, method, tol=mp.inf)
        c = coeff.to_mpc(mp)
        total += c * rep.value
        err += abs(c) * rep.error_estimate
        terms = max(terms, rep.terms_used)
    return EvalReport(total, err, terms, method)


__all__ = [
    "ACCELERATED", "DIRECT", "DEFAULT_BUDGET", "EvalReport", "eval_li", "eval_M", "eval_T",
    "eval_S", "eval_t", "eval_zeta", "eval_word", "eval_li_combination",
]
