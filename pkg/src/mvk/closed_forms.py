"""Explicit evaluations of S, T and t values as canonical SymExprs, together
with the polylogarithm relations (antipode, doubling) used to derive them.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DivergentCombination, DomainError
from .gaussian import GaussQ, ONE
from .indices import LiIndex, li
from .symbolic import (
    SymExpr,
    Li,
    beta,
    canonicalize,
    log2,
    mixed_sym,
    mzv,
    pi,
    zeta,
)
from .words import _stuffle_letters

I = GaussQ(0, 1)
F = Fraction


@dataclass(frozen=True)
class ClosedForm:
    name: str
    params: tuple[int, ...]
    expr: SymExpr
    anchor: str

    def __str__(self):
        return f"{self.name}{self.params} = {self.expr}"


# ---------------------------------------------------------------------------
# small helpers

def _zeta(n: int) -> SymExpr:
    """zeta(n) for n >= 0 with zeta(0) = -1/2; zeta(1) is refused."""
    if n == 0:
        return SymExpr.const(F(-1, 2))
    return zeta(n)


def _zbar(n: int) -> SymExpr:
    """Alternating single zeta zeta('n) = Li_n(-1)."""
    return Li([n], [-1])


def _li1(s: int, x) -> SymExpr:
    return Li([s], [x])


def _li2(s1: int, s2: int, x1, x2) -> SymExpr:
    return Li([s1, s2], [x1, x2])


def _T1(k: int) -> SymExpr:
    """Depth-one T(k) = 2(1 - 2^-k) zeta(k)."""
    return zeta(k) * (2 * (1 - F(1, 2 ** k)))


def _half_pi_pow(k: int) -> SymExpr:
    return pi(k) * F(1, 2 ** k)


def _ipi2_pow(k: int) -> SymExpr:
    """(i pi / 2)^k."""
    return pi(k) * (I ** k / 2 ** k)


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _series(name: str, order: int):
    from .series import series_build

    return series_build(name, max(order, 2))


# ---------------------------------------------------------------------------
# Question 1: S(2,{1}_{2m-2},'1) and T(2,{1}_{2m-1},'1)

@functools.lru_cache(maxsize=None)
def cf_qn1(kind: str, m: int) -> SymExpr:
    _require(m >= 1, "m must be at least 1")
    if kind == "S":
        e = zeta(2 * m + 1) * (-m * (F(2) ** (1 - 2 * m) - 4))
        e -= log2() * zeta(2 * m) * (2 * (1 - F(1, 4 ** m)))
        e -= pi() * beta(2 * m)
        for a in range(1, m):
            b = m - a
            c = 2 * (1 - F(1, 4 ** a)) * (F(1, 16 ** b) - 3 * F(1, 4 ** b) + 2)
            e -= zeta(2 * a) * zeta(2 * b + 1) * c
        return canonicalize(e)
    if kind == "T":
        e = beta(2 * m + 2) * (-2 * (2 * m + 1))
        for a in range(1, m + 1):
            b = m + 1 - a
            e += zeta(2 * a) * beta(2 * b) * (4 * (1 - F(1, 4 ** a)))
        return canonicalize(e)
    raise DomainError("kind must be 'S' or 'T'")


# ---------------------------------------------------------------------------
# T('1,{1}_r), T(2,{1}_r), S(2,{1}_{2p-1}), T('2,{1}_{r-1})

def cf_Tbar1_ones(r: int) -> SymExpr:
    """T('1,{1}_r) = -(-1)^{floor(r/2)}/(r+1)! (pi/2)^{r+1}."""
    _require(r >= 0, "r must be non-negative")
    return _half_pi_pow(r + 1) * F(-(-1) ** (r // 2), factorial(r + 1))


def cf_Tbar1_ones_bar1(m: int) -> SymExpr:
    """T('1,{1}_m,'1) through the duality T('2,{1}_m) = -(-1)^m T('1,{1}_m,'1)."""
    _require(m >= 0, "m must be non-negative")
    return cf_Tbar2_ones(m + 1) * (-(-1) ** m)


def cf_T2_ones(r: int) -> SymExpr:
    """T(2,{1}_r) = T(r+2)."""
    _require(r >= 0, "r must be non-negative")
    return canonicalize(_T1(r + 2))


def cf_S2_ones(p: int) -> SymExpr:
    """S(2,{1}_{2p-1})."""
    _require(p >= 1, "p must be at least 1")
    e = _T1(2 * p + 1) * (2 * p) - log2() * _T1(2 * p) * 2
    for j in range(p - 1):
        k = 2 * p - 1 - 2 * j
        e -= zeta(k) * _T1(2 * j + 2) * (2 * (1 - F(2) ** (1 - k)))
    return canonicalize(e)


def cf_Tbar2_ones(r: int) -> SymExpr:
    """T('2,{1}_{r-1}): the z^r coefficient of the T('2,1,...,1) generating series."""
    _require(r >= 1, "r must be at least 1")
    return _series("GT_BAR2", r).coeff(r)


def cf_Tbar2_ones_even(p: int) -> SymExpr:
    """T('2,{1}_{2p-2}) as the explicit double sum over 1 <= k <= j <= p."""
    _require(p >= 1, "p must be at least 1")
    e = SymExpr()
    for j in range(1, p + 1):
        for k in range(1, j + 1):
            d = 2 * j - 2 * k
            c = (1 - F(2) ** (1 - d)) / 2 ** d * F((-1) ** (p - j), factorial(2 * p - 2 * j + 1))
            e -= beta(2 * k) * _zeta(d) * pi(2 * p - 2 * j) * (4 * c)
    return canonicalize(e)


def cf_W(j: int) -> SymExpr:
    """Weighted sum W(j+1, j): the z^j coefficient of its generating series."""
    _require(j >= 1, "j must be at least 1")
    return _series("W_CAL", j).coeff(j)


def cf_W2(k: int) -> SymExpr:
    """W(2k+1, 2) as a finite sum of zeta products."""
    _require(k >= 1, "k must be at least 1")
    e = SymExpr()
    for j in range(1, k + 1):
        d = 2 * k - 2 * j
        c = (1 - F(2) ** (2 * j + 1)) * (1 - F(2) ** (1 - d)) / F(2) ** (2 * k - 1)
        e += zeta(2 * j + 1) * _zeta(d) * c
    return canonicalize(e)


def cf_W_oddwt(p: int) -> SymExpr:
    """W(2p+1, 2p) = sum_j W(2j+1, 2) (-1)^{p-j} pi^{2p-2j}/(2p-2j+1)!."""
    _require(p >= 1, "p must be at least 1")
    e = SymExpr()
    for j in range(1, p + 1):
        e += cf_W2(j) * pi(2 * p - 2 * j) * F((-1) ** (p - j), factorial(2 * p - 2 * j + 1))
    return canonicalize(e)


# ---------------------------------------------------------------------------
# cotangent and arctangent integrals

def cf_cot_moment(p: int, quarter: bool = False) -> SymExpr:
    """int_0^{pi/2} (or pi/4) x^p cot(x) dx."""
    _require(p >= 1, "p must be at least 1")
    pf = factorial(p)
    if not quarter:
        e = _half_pi_pow(p) * log2()
        for k in range(1, p // 2 + 1):
            c = F(pf * (-1) ** k * (4 ** k - 1), factorial(p - 2 * k) * 2 ** p * 4 ** k)
            e += pi(p - 2 * k) * zeta(2 * k + 1) * c
    else:
        e = pi(p) * log2() * F(1, 2 * 4 ** p)
        for k in range(1, p // 2 + 1):
            c = F(pf * (-1) ** k * (4 ** k - 1), factorial(p - 2 * k) * 2 * 4 ** p * 4 ** k)
            e += pi(p - 2 * k) * zeta(2 * k + 1) * c
        for k in range(1, (p + 1) // 2 + 1):
            c = F(pf * (-4) ** k, factorial(p + 1 - 2 * k) * 2 * 4 ** p)
            e -= pi(p + 1 - 2 * k) * beta(2 * k) * c
    if p % 2 == 0:
        e += zeta(p + 1) * F(pf * (-1) ** (p // 2), 2 ** p)
    return canonicalize(e)


def cf_r(p: int) -> SymExpr:
    """r(p) = int_0^1 arctan(x)^p dx via integration by parts against the cotangent moments."""
    _require(p >= 1, "p must be at least 1")
    e = pi(p) * F(1, 4 ** p) - pi(p - 1) * log2() * F(p, 2 ** p)
    for k in range(1, p):
        between = cf_cot_moment(k) - cf_cot_moment(k, quarter=True)
        e -= _half_pi_pow(p - 1 - k) * between * (p * (-1) ** k * comb(p - 1, k))
    return canonicalize(e)


def cf_arctan_over_x(r: int) -> SymExpr:
    """int_0^1 arctan(x)^r / x dx = (-1)^{floor((r+1)/2)} r!/2^r T('2,{1}_{r-1})."""
    _require(r >= 1, "r must be at least 1")
    return canonicalize(cf_Tbar2_ones(r) * F((-1) ** ((r + 1) // 2) * factorial(r), 2 ** r))


# ---------------------------------------------------------------------------
# T('2,{1}_{m-1},'1)

def _tbar2_bar1_general(m: int) -> SymExpr:
    inner = SymExpr()
    for k in range(m + 1):
        for p in range(m - k + 1):
            r = m - k - p
            inner += beta(r + 1) * beta(p + 1) * _ipi2_pow(k) * (4 * I * (-1) ** (p + 1) * F(1, factorial(k)))
    for p in range(m + 1):
        r = m - p
        bracket = _zbar(p + 1) - (zeta(p + 1) if p >= 1 else SymExpr())
        inner += beta(r + 1) * bracket * (2 * (-1) ** (1 + p))
    inner += beta(m + 2) * 2
    # Li_{1,m+1}(-1,-i) enters with the opposite sign to the other three
    im_part = (-_li2(1, m + 1, -1, -I) + _li2(m + 1, 1, -I, 1)
               + _li2(1, m + 1, I, -I) + _li2(1, m + 1, -I, -I)).imag_part()
    inner -= im_part * 2
    return canonicalize(inner * (I if m % 2 == 0 else 1))


def _tbar2_bar1_even(m: int) -> SymExpr:
    e = SymExpr()
    for k in range(m // 2 + 1):
        for r in range(m - 2 * k + 1):
            p = m - 2 * k - r
            e += beta(r + 1) * beta(p + 1) * _half_pi_pow(2 * k) * F(4 * (-1) ** (r + k), factorial(2 * k))
    return canonicalize(e)


def cf_Tbar2_ones_bar1(m: int, form: str = "auto") -> SymExpr:
    """T('2,{1}_{m-1},'1).

    ``form``: ``"even"`` (pure pi/beta polynomial, m even only), ``"general"``
    (valid for all m, with depth-two level-four polylogarithms), or ``"auto"``.
    """
    _require(m >= 1, "m must be at least 1")
    if form == "auto":
        form = "even" if m % 2 == 0 else "general"
    if form == "even":
        _require(m % 2 == 0, "the pure form needs even m")
        return _tbar2_bar1_even(m)
    if form == "general":
        return _tbar2_bar1_general(m)
    raise DomainError(f"unknown form {form!r}")


def cf_Tbar2_bar1_weight3() -> SymExpr:
    """T('2,'1) = 8 Im Li_3((1+i)/2) + 4 beta(2) log2 - 3 pi^3/16 - pi/4 log^2 2."""
    x = GaussQ(F(1, 2), F(1, 2))
    e = Li([3], [x]).imag_part() * 8 + beta(2) * log2() * 4 - pi(3) * F(3, 16) - pi() * log2(2) * F(1, 4)
    return canonicalize(e)


# ---------------------------------------------------------------------------
# S('2,{1}_{m-1},1)

def _sbar2_1_general(m: int) -> SymExpr:
    inner = SymExpr()
    for p in range(m + 1):
        r = m - p
        inner += beta(r + 1) * _li1(p + 1, I) * (4 * I * (-1) ** (p + 1))
    # the second sum runs over k + r = m
    for k in range(m + 1):
        r = m - k
        inner += beta(r + 1) * _ipi2_pow(k + 1) * (2 * I * F(1, factorial(k + 1)))
    for k in range(m + 1):
        for p in range(m - k + 1):
            r = m - k - p
            inner -= beta(r + 1) * _zbar(p + 1) * _ipi2_pow(k) * (4 * I * (-1) ** (p + 1) * F(1, factorial(k)))
    inner += beta(m + 2) * (2 * I) - _zbar(m + 2) + zeta(m + 2)
    inner += (-_li2(1, m + 1, I, -1) + _li2(1, m + 1, I, 1)
              + _li2(1, m + 1, -1, -1) - _li2(1, m + 1, -1, 1)) * 2
    return canonicalize(inner * (I if m % 2 else 1))


def _sbar2_1_even(m: int) -> SymExpr:
    ell = m // 2
    e = mzv([2 * ell + 1, 1], [-1, 1]) * 2
    e += zeta(2 * ell + 2) * F(1, 2 ** (2 * ell + 1))
    e += log2() * zeta(2 * ell + 1) * (F(2) ** (1 - 2 * ell) - 4)
    for k in range(ell):
        r = 2 * ell - 1 - 2 * k
        e += log2() * beta(r + 1) * _half_pi_pow(2 * k + 1) * F(4 * (-1) ** k, factorial(2 * k + 1))
    for p in range(2, 2 * ell + 1):
        q = 2 * ell + 2 - p
        e += zeta(p) * zeta(q) * ((-1) ** p * (1 - F(2) ** (1 - p)) * (3 - F(2) ** (1 - q)))
    for k in range(ell + 1):
        r = 2 * ell - 2 * k
        e += beta(r + 1) * _half_pi_pow(2 * k + 1) * F(2 * (-1) ** (k + 1), factorial(2 * k + 1))
    for p in range(2 * ell + 1):
        r = 2 * ell - p
        e += beta(r + 1) * beta(p + 1) * (2 * (-1) ** p)
    for k in range(ell):
        for p in range(1, 2 * ell - 2 * k):
            r = 2 * ell - 1 - 2 * k - p
            c = F(4 * (-1) ** (p + k), factorial(2 * k + 1)) * (1 - F(1, 2 ** p))
            e += beta(r + 1) * zeta(p + 1) * _half_pi_pow(2 * k + 1) * c
    return canonicalize(e)


def cf_Sbar2_ones_1(m: int, form: str = "auto") -> SymExpr:
    """S('2,{1}_{m-1},1); ``form`` is ``"even"``, ``"general"`` or ``"auto"``."""
    _require(m >= 1, "m must be at least 1")
    if form == "auto":
        form = "even" if m % 2 == 0 else "general"
    if form == "even":
        _require(m % 2 == 0, "the explicit form needs even m")
        return _sbar2_1_even(m)
    if form == "general":
        return _sbar2_1_general(m)
    raise DomainError(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# t('1,'(2l+1)) and S('2,{1}_{m-1},'1)

def weighted_double_sum(ell: int) -> SymExpr:
    """W_l = sum_{p+q=2l+2} 2^-p zeta('p, q)."""
    _require(ell >= 1, "l must be at least 1")
    n = 2 * ell + 2
    e = SymExpr()
    for p in range(1, n):
        e += mzv([p, n - p], [-1, 1]) * F(1, 2 ** p)
    return canonicalize(e)


def cf_t_double(ell: int) -> SymExpr:
    """t('1, '(2l+1)) through depth-two alternating zeta values."""
    _require(ell >= 1, "l must be at least 1")
    n = 2 * ell + 2
    e = mzv([2 * ell + 1, 1], [-1, 1]) * F(1, 4 ** ell)
    for j in range(1, 2 * ell + 2):
        e -= mzv([j, n - j], [-1, 1]) * F(2, 2 ** j)
    e += _zbar(n) * F(3, 2 ** (2 * ell + 1))
    for r in range(1, 2 * ell + 1):
        e -= _zbar(r) * zeta(n - r) * F((-1) ** r, 2 ** (r - 1))
    return canonicalize(e * F(1, 4))


def _sbar2_bar1_general(m: int) -> SymExpr:
    inner = beta(m + 2) * (2 * I)
    for k in range(m + 1):
        for p in range(m - k + 1):
            r = m - k - p
            c = 2 * I * (-1) ** p * (2 - F(1, 2 ** p)) * F(1, factorial(k))
            inner += beta(r + 1) * _zbar(p + 1) * _ipi2_pow(k) * c
    for p in range(m + 1):
        r = m - p
        bracket = _li1(p + 1, I) * 2 - (zeta(p + 1) if p >= 1 else SymExpr()) - _zbar(p + 1)
        inner += beta(r + 1) * bracket * (2 * I * (-1) ** (p + 1))
    inner += (_li2(1, m + 1, I, 1) - _li2(1, m + 1, -1, 1) + _li2(1, m + 1, -1, -1) - _li2(1, m + 1, I, -1)) * 2
    inner += _li2(1, m + 1, -I, -I) + _li2(1, m + 1, -1, I)
    inner += -_li2(1, m + 1, I, -I) + _li2(m + 1, 1, I, 1)
    inner += (-_li2(m + 1, 1, -I, 1) - _li2(1, m + 1, -1, -I)
              - _li2(1, m + 1, -I, I) + _li2(1, m + 1, I, I))
    return canonicalize(inner * (I if m % 2 else 1))


def _sbar2_bar1_theorem(m: int, t_value: SymExpr | None = None) -> SymExpr:
    ell = m // 2
    n = 2 * ell + 2
    e = SymExpr()
    for k in range(ell):
        for p in range(2 * ell - 2 * k):
            r = 2 * ell - 1 - 2 * k - p
            c = F(2 * (-1) ** (1 + k + p), factorial(2 * k + 1)) * (2 - F(1, 2 ** p))
            e += beta(r + 1) * _zbar(p + 1) * _half_pi_pow(2 * k + 1) * c
    for p in range(2 * ell + 1):
        e += beta(2 * ell - p + 1) * beta(p + 1) * (2 * (-1) ** p)
    for p in range(1, n):
        e += _zbar(p) * _zbar(n - p) * (-1) ** p
    for p in range(1, n - 1):
        e += _zbar(p) * zeta(n - p) * (2 * (-1) ** (p + 1))
    e += _zbar(n) * 2 + mzv([2 * ell + 1, 1], [-1, 1]) * 2
    if t_value is None:
        t_value = mixed_sym(_t_index(ell)) * F(1, 4)
    e -= t_value * 4
    return canonicalize(e)


def _t_index(ell: int):
    from .indices import t_index

    return t_index([1, 2 * ell + 1], [-1, -1])


def _sbar2_bar1_corollary(m: int, w_coeff: int = 2) -> SymExpr:
    ell = m // 2
    n = 2 * ell + 2
    e = SymExpr()
    for k in range(ell):
        for p in range(1, 2 * ell - 2 * k):
            r = 2 * ell - 1 - 2 * k - p
            c = F(2 * (-1) ** (k + p), factorial(2 * k + 1)) * (1 - F(1, 2 ** p)) * (2 - F(1, 2 ** p))
            e += beta(r + 1) * zeta(p + 1) * _half_pi_pow(2 * k + 1) * c
    for p in range(2 * ell + 1):
        e += beta(2 * ell - p + 1) * beta(p + 1) * (2 * (-1) ** p)
    for p in range(2, n - 1):
        q = n - p
        c = (-1) ** p * (1 - F(2) ** (1 - p)) * (3 - F(2) ** (1 - p) - F(2) ** (1 - q))
        e += zeta(p) * zeta(q) * c
    for k in range(ell):
        r = 2 * ell - 1 - 2 * k
        e += log2() * beta(r + 1) * _half_pi_pow(2 * k + 1) * F(2 * (-1) ** k, factorial(2 * k + 1))
    e += zeta(n) * ((3 * F(1, 2 ** (2 * ell + 1)) - 2) * (1 - F(1, 2 ** (2 * ell + 1))))
    e += log2() * zeta(2 * ell + 1) * (F(2) ** (1 - 2 * ell) - 3)
    e += mzv([2 * ell + 1, 1], [-1, 1]) * (2 - F(1, 4 ** ell))
    e += weighted_double_sum(ell) * w_coeff
    return canonicalize(e)


def cf_Sbar2_ones_bar1(ell: int, form: str = "corollary") -> SymExpr:
    """S('2,{1}_{2l-1},'1).

    ``form``: ``"corollary"`` (explicit polynomial plus zeta('(2l+1),1) and W_l),
    ``"theorem"`` (with the t('1,'(2l+1)) value substituted from :func:`cf_t_double`),
    ``"theorem_t"`` (t value kept as a nested-sum symbol) or ``"general"``
    (the all-m evaluation at m = 2l).
    """
    _require(ell >= 1, "l must be at least 1")
    m = 2 * ell
    if form == "corollary":
        return _sbar2_bar1_corollary(m)
    if form == "theorem":
        return _sbar2_bar1_theorem(m, cf_t_double(ell))
    if form == "theorem_t":
        return _sbar2_bar1_theorem(m)
    if form == "general":
        return _sbar2_bar1_general(m)
    raise DomainError(f"unknown form {form!r}")


def cf_Sbar2_ones_bar1_any(m: int) -> SymExpr:
    """S('2,{1}_{m-1},'1) for any m >= 1 (general evaluation)."""
    _require(m >= 1, "m must be at least 1")
    return _sbar2_bar1_general(m)


# ---------------------------------------------------------------------------
# weight-8 and weight-10 reference values

def weighted_sum_weight8() -> SymExpr:
    """The quoted basis reduction of W_3, kept verbatim.

    Numerically this combination equals 2 W_3, not W_3; the full weight-8
    evaluation is recovered from the corollary by replacing 2 W_3 with it.
    """
    e = (mzv([7, 1], [-1, 1]) * F(-177, 1216) - mzv([5, 3], [-1, 1]) * F(17, 304)
         - zeta(2) ** 4 * F(275763, 3404800) + zeta(3) * zeta(5) * F(1305, 4864)
         + zeta(7) * log2() * F(63, 64))
    return canonicalize(e)


def fixture_sbar2_bar1_l3() -> SymExpr:
    e = (mzv([7, 1], [-1, 1]) * F(559, 304) - mzv([5, 3], [-1, 1]) * F(17, 304)
         - beta(2) * beta(6) * 4 - beta(4) ** 2 * 2 + pi() * beta(2) * zeta(5) * F(465, 256)
         + pi() * beta(4) * zeta(3) * F(21, 16) - pi(3) * beta(2) * zeta(3) * F(7, 128)
         + pi() * beta(6) * log2() - pi(3) * beta(4) * log2() * F(1, 24)
         + pi(5) * beta(2) * log2() * F(1, 1920) - zeta(3) * zeta(5) * F(10377, 2432)
         - zeta(7) * log2() * F(127, 64) + pi(8) * F(84869, 326860800))
    return canonicalize(e)


def fixture_sbar2_bar1_l4() -> SymExpr:
    e = (mzv([9, 1], [-1, 1]) * F(47483, 25328) - mzv([7, 3], [-1, 1]) * F(3165, 101312)
         + pi() * beta(2) * zeta(7) * F(8001, 4096) - pi(3) * beta(2) * zeta(5) * F(155, 2048)
         + pi() * beta(4) * zeta(5) * F(465, 256) + pi() * beta(6) * zeta(3) * F(21, 16)
         - pi(3) * beta(4) * zeta(3) * F(7, 128) + pi(5) * beta(2) * zeta(3) * F(7, 10240)
         - beta(2) * beta(8) * 4 - beta(4) * beta(6) * 4
         - pi(3) * beta(6) * log2() * F(1, 24) + pi(5) * beta(4) * log2() * F(1, 1920)
         - pi(7) * beta(2) * log2() * F(1, 322560) + pi() * beta(8) * log2()
         - zeta(9) * log2() * F(511, 256) - zeta(3) * zeta(7) * F(3606645, 810496)
         - zeta(5) ** 2 * F(33075465, 12967936) + pi(10) * F(1364516407, 38822888079360))
    return canonicalize(e)


# ---------------------------------------------------------------------------
# polylogarithm relations

def _li_product(i1: LiIndex, i2: LiIndex) -> SymExpr:
    return Li(i1.exponents, i1.args) * Li(i2.exponents, i2.args)


def antipode_mi1(ell: int) -> SymExpr:
    """Residual of Li_{2l+1,1}(-i,1) = Li_{1,2l+1}(-i,i) - Li_{2l+2}(-i) + sum_r (-1)^r Li_r(-i) zeta(2l+2-r)."""
    _require(ell >= 1, "l must be at least 1")
    n = 2 * ell + 2
    rhs = _li2(1, 2 * ell + 1, -I, I) - _li1(n, -I)
    for r in range(1, 2 * ell + 1):
        rhs += _li1(r, -I) * zeta(n - r) * (-1) ** r
    return canonicalize(_li2(2 * ell + 1, 1, -I, 1) - rhs)


def antipode_palindrome(ell: int, x) -> SymExpr:
    """Residual of 2 Li_{1,2l+1}(x,1) + sum_{r=1}^{2l+1} (-1)^r Li_r(x) Li_{2l+2-r}(x), x in {-1, i}."""
    _require(ell >= 1, "l must be at least 1")
    x = GaussQ.coerce(x)
    n = 2 * ell + 2
    e = _li2(1, 2 * ell + 1, x, 1) * 2
    for r in range(1, 2 * ell + 2):
        e += _li1(r, x) * _li1(n - r, x) * (-1) ** r
    return canonicalize(e)


def antipode_mm(ell: int) -> SymExpr:
    """Residual of Li_{1,2l+1}(-1,-1) = Li_{2l+1,1}(-1,1) + Li_{2l+2}(-1) - sum_{r=1}^{2l} (-1)^r Li_r(-1) zeta(2l+2-r)."""
    _require(ell >= 1, "l must be at least 1")
    n = 2 * ell + 2
    rhs = _li2(2 * ell + 1, 1, -1, 1) + _zbar(n)
    for r in range(1, 2 * ell + 1):
        rhs -= _zbar(r) * zeta(n - r) * (-1) ** r
    return canonicalize(_li2(1, 2 * ell + 1, -1, -1) - rhs)


def antipode_i_minus1(ell: int) -> SymExpr:
    """Residual of Li_{1,2l+1}(i,-1) + Li_{1,2l+1}(-i,-1) + sum_r (-1)^r Li_r(i) Li_{2l+2-r}(-i)."""
    _require(ell >= 1, "l must be at least 1")
    n = 2 * ell + 2
    e = _li2(1, 2 * ell + 1, I, -1) + _li2(1, 2 * ell + 1, -I, -1)
    for r in range(1, 2 * ell + 2):
        e += _li1(r, I) * _li1(n - r, -I) * (-1) ** r
    return canonicalize(e)


def doubling_A(j: int, s: int, t: int) -> int:
    """A_j^{s,t} = binom(s+t-j-1, t-1)."""
    return comb(s + t - j - 1, t - 1)


def doubling_constant(s: int, t: int) -> Fraction:
    """Coefficient of 2^{-s-t} Li_{s+t}(x^2) in the doubling relation."""
    return F(factorial(s + t - 1), factorial(s - 1) * factorial(t))


def _add(out: dict, idx: LiIndex, c):
    out[idx] = out.get(idx, GaussQ(0)) + GaussQ.coerce(c)
    if not out[idx]:
        del out[idx]


def doubling_terms(s: int, t: int, x, y) -> dict[LiIndex, GaussQ]:
    """LHS - RHS of the doubly generalised doubling relation, possibly divergent."""
    _require(s >= 1 and t >= 1, "s and t must be positive")
    x, y = GaussQ.coerce(x), GaussQ.coerce(y)
    out: dict[LiIndex, GaussQ] = {}
    half = F(1, 2)
    _add(out, li([s, t], [x, y]), half)
    _add(out, li([s, t], [-x, -y]), half)
    w = s + t
    for j in range(1, t + 1):
        _add(out, li([w - j, j], [x * x, y / x]), -F(doubling_A(j, t, s), 2 ** (w - j)))
    for j in range(1, s + 1):
        _add(out, li([j, w - j], [x / y, y * y]), -F(doubling_A(j, s, t), 2 ** (w - j)))
        a = half * doubling_A(j, s, t)
        _add(out, li([j, w - j], [x / y, -y]), a)
        _add(out, li([j, w - j], [x / y, y]), a)
    _add(out, li([w], [x * x]), doubling_constant(s, t) / 2 ** w)
    return out


@functools.lru_cache(maxsize=4096)
def _stuffle_reg_poly(pairs: tuple) -> tuple[tuple[tuple, int, Fraction], ...]:
    """Stuffle regularisation keeping T = Li_1(1) formal: terms (pairs, power of T, coeff)."""
    one = (1, ONE)
    a = 0
    while a < len(pairs) and pairs[a] == one:
        a += 1
    if a == 0:
        return ((pairs, 0, F(1)),)
    out: dict[tuple, Fraction] = {}
    # T * Li(1^{a-1} u) = a Li(1^a u) + other stuffle terms
    for key, k, c in _stuffle_reg_poly(pairs[1:]):
        out[(key, k + 1)] = out.get((key, k + 1), F(0)) + c / a
    for kp, c in _stuffle_letters((one,), pairs[1:]):
        if kp == pairs:
            continue
        for k2, pw, c2 in _stuffle_reg_poly(kp):
            out[(k2, pw)] = out.get((k2, pw), F(0)) - c * c2 / a
    return tuple((k, pw, c) for (k, pw), c in out.items() if c)


def regularize_relation(terms: dict[LiIndex, GaussQ]) -> SymExpr:
    """Stuffle-regularise every index (Li_1(1) := T formal) and return the T^0 part.

    Raises DivergentCombination when a positive power of T survives.
    """
    by_power: dict[int, SymExpr] = {}
    for idx, c in terms.items():
        pairs = tuple(zip(idx.exponents, idx.args))
        for key, pw, c2 in _stuffle_reg_poly(pairs):
            val = SymExpr.const(1) if not key else Li([p[0] for p in key], [p[1] for p in key])
            by_power[pw] = by_power.get(pw, SymExpr()) + val * (c * c2)
    for pw, e in by_power.items():
        if pw and canonicalize(e):
            raise DivergentCombination(f"T^{pw} coefficient does not cancel: {canonicalize(e)}")
    return canonicalize(by_power.get(0, SymExpr()))


def gen_doubling_relation(s: int, t: int, x, y) -> SymExpr:
    """The doubling relation as a SymExpr which should evaluate to zero.

    For s = 1 and x^2 = 1 the divergent Li_1(1)-type pieces cancel formally but
    the stuffle-regularised relation leaves a finite remainder (e.g. log^2 2 / 2
    at (1, 1, 1, -1)), so those arguments are refused.
    """
    x = GaussQ.coerce(x)
    if s == 1 and x * x == ONE:
        raise DivergentCombination("s = 1 with x^2 = 1 is not covered by the stuffle-regularised relation")
    return regularize_relation(doubling_terms(s, t, x, y))


def doubling_ii(m: int) -> SymExpr:
    """The s = 1, x = y = i specialisation written with convergent terms only."""
    _require(m >= 1, "m must be at least 1")
    e = (_li2(1, m + 1, I, I) + _li2(1, m + 1, -I, -I) - _li2(m + 1, 1, -I, 1) - _li2(m + 1, 1, I, 1)
         + _li2(m + 1, 1, -1, 1) * F(1, 2 ** m) + _zbar(m + 2) * F(1, 2 ** m))
    for j in range(1, m + 2):
        e -= _li2(j, m + 2 - j, -1, 1) * F(2, 2 ** j)
    return canonicalize(e)


__all__ = [
    "ClosedForm", "cf_qn1", "cf_Tbar1_ones", "cf_Tbar1_ones_bar1", "cf_T2_ones", "cf_S2_ones",
    "cf_Tbar2_ones", "cf_Tbar2_ones_even", "cf_W", "cf_W2", "cf_W_oddwt", "cf_cot_moment", "cf_r",
    "cf_arctan_over_x", "cf_Tbar2_ones_bar1", "cf_Tbar2_bar1_weight3", "cf_Sbar2_ones_1",
    "weighted_double_sum", "cf_t_double", "cf_Sbar2_ones_bar1", "cf_Sbar2_ones_bar1_any",
    "weighted_sum_weight8", "fixture_sbar2_bar1_l3", "fixture_sbar2_bar1_l4",
    "antipode_mi1", "antipode_palindrome", "antipode_mm", "antipode_i_minus1",
    "doubling_A", "doubling_constant", "doubling_terms", "regularize_relation",
    "gen_doubling_relation", "doubling_ii",
]
