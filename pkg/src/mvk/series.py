"""Truncated power series with exact SymExpr coefficients, and the named
generating series built from the odd-zeta series A(z) and even-beta series D(z).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, OrderExceeded, UnknownName
from .gaussian import GaussQ
from .symbolic import SymExpr, beta, canonicalize, log2, pi, zeta

DEFAULT_ORDER = 14
MAX_ORDER = 20

_I = GaussQ(0, 1)


@dataclass(frozen=True)
class Series:
    """sum_{n=0}^{order} coeffs[n] z^n, known modulo z^{order+1}."""

    order: int
    coeffs: tuple[SymExpr, ...]

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("series order must be non-negative")
        coeffs = tuple(canonicalize(SymExpr.coerce(c)) for c in self.coeffs)
        if len(coeffs) > self.order + 1:
            coeffs = coeffs[:self.order + 1]
        coeffs = coeffs + (SymExpr(),) * (self.order + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_function(cls, order: int, fn: Callable[[int], object]) -> Series:
        return cls(order, tuple(SymExpr.coerce(fn(n)) for n in range(order + 1)))

    @classmethod
    def constant(cls, c, order: int) -> Series:
        return cls(order, (SymExpr.coerce(c),))

    @classmethod
    def monomial(cls, c, power: int, order: int) -> Series:
        coeffs = [SymExpr()] * (order + 1)
        if power <= order:
            coeffs[power] = SymExpr.coerce(c)
        return cls(order, tuple(coeffs))

    def coeff(self, n: int) -> SymExpr:
        if n < 0:
            raise OrderExceeded(f"negative power {n}")
        if n > self.order:
            raise OrderExceeded(f"coefficient z^{n} requested from a series known to order {self.order}")
        return self.coeffs[n]

    __getitem__ = coeff

    # arithmetic -------------------------------------------------------------

    def _other(self, other) -> Series:
        if isinstance(other, Series):
            return other
        return Series.constant(other, self.order)

    def __add__(self, other) -> Series:
        other = self._other(other)
        n = min(self.order, other.order)
        return Series(n, tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> Series:
        return self + (-self._other(other))

    def __rsub__(self, other) -> Series:
        return self._other(other) - self

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            c = SymExpr.coerce(other)
            return Series(self.order, tuple(a * c for a in self.coeffs))
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = SymExpr()
            for j in range(k + 1):
                a, b = self.coeffs[j], other.coeffs[k - j]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return Series(n, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Series:
        if isinstance(other, Series):
            return self * other.reciprocal()
        c = SymExpr.coerce(other)
        return Series(self.order, tuple(a / c for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise OrderExceeded(f"cannot extend a series of order {self.order} to {order}")
        return Series(order, self.coeffs[:order + 1])

    def derivative(self) -> Series:
        """Formal derivative; the result is known to one order less."""
        if self.order == 0:
            raise OrderExceeded("derivative of an order-0 series carries no information")
        return Series(self.order - 1, tuple(self.coeffs[k + 1] * (k + 1) for k in range(self.order)))

    def times_z(self, power: int = 1) -> Series:
        """z^power * f: known to ``order + power``."""
        return Series(self.order + power, (SymExpr(),) * power + self.coeffs)

    def divide_z(self, power: int = 1) -> Series:
        for k in range(power):
            if self.coeffs[k]:
                raise DomainError("division by z needs vanishing low coefficients")
        if power > self.order:
            raise OrderExceeded("nothing left after division by z")
        return Series(self.order - power, self.coeffs[power:])

    def compose_linear(self, c) -> Series:
        """Substitute z <- c z for a single-monomial constant c."""
        c = SymExpr.coerce(c)
        if len(c.terms) > 1:
            raise DomainError("compose_linear needs a single monomial")
        out = []
        power = SymExpr.const(1)
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return Series(self.order, tuple(out))

    def reflect(self) -> Series:
        return self.compose_linear(-1)

    def even_part(self) -> Series:
        return Series(self.order, tuple(c if k % 2 == 0 else SymExpr() for k, c in enumerate(self.coeffs)))

    def odd_part(self) -> Series:
        return Series(self.order, tuple(c if k % 2 else SymExpr() for k, c in enumerate(self.coeffs)))

    def reciprocal(self) -> Series:
        c0 = self.coeffs[0]
        c, mono = c0.as_monomial() if c0 else (None, None)
        if c is None or mono:
            raise DomainError("reciprocal needs a non-zero rational constant term")
        inv = c.inverse()
        out = [SymExpr.const(inv)]
        for k in range(1, self.order + 1):
            acc = SymExpr()
            for j in range(1, k + 1):
                if self.coeffs[j] and out[k - j]:
                    acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv)
        return Series(self.order, tuple(out))

    def conjugate(self) -> Series:
        return Series(self.order, tuple(c.conjugate() for c in self.coeffs))

    def real_part(self) -> Series:
        return Series(self.order, tuple(c.real_part() for c in self.coeffs))

    def imag_part(self) -> Series:
        return Series(self.order, tuple(c.imag_part() for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rows(self) -> list[tuple[int, SymExpr]]:
        return list(enumerate(self.coeffs))

    def __str__(self):
        parts = [f"({c})*z^{n}" for n, c in enumerate(self.coeffs) if c]
        return (" + ".join(parts) or "0") + f" + O(z^{self.order + 1})"


def series_add(a: Series, b: Series) -> Series:
    return a + b


def series_mul(a: Series, b: Series) -> Series:
    return a * b


def series_derivative(a: Series) -> Series:
    return a.derivative()


def series_coeff(a: Series, n: int) -> SymExpr:
    return a.coeff(n)


def series_compose_linear(a: Series, c) -> Series:
    return a.compose_linear(c)


# ---------------------------------------------------------------------------
# elementary series

def _q(x) -> SymExpr:
    return SymExpr.const(x)


def exp_series(order: int, c=1) -> Series:
    """exp(c z)."""
    return Series.from_function(order, lambda n: Fraction(1, math.factorial(n))).compose_linear(c)


def sin_series(order: int, c=1) -> Series:
    def f(n):
        return Fraction((-1) ** (n // 2), math.factorial(n)) if n % 2 else 0

    return Series.from_function(order, f).compose_linear(c)


def cos_series(order: int, c=1) -> Series:
    def f(n):
        return 0 if n % 2 else Fraction((-1) ** (n // 2), math.factorial(n))

    return Series.from_function(order, f).compose_linear(c)


def A_series(order: int) -> Series:
    """A(z) = sum_{k>=1} zeta(2k+1) z^{2k}."""
    return Series.from_function(order, lambda n: zeta(n + 1) if n >= 2 and n % 2 == 0 else 0)


def D_series(order: int) -> Series:
    """D(z) = sum_{k>=1} beta(2k) z^{2k-1}."""
    return Series.from_function(order, lambda n: beta(n + 1) if n % 2 else 0)


def pi_tan_series(order: int) -> Series:
    """(pi z/2) tan(pi z/2) = sum_{n>=1} 2(1-2^{-2n}) zeta(2n) z^{2n}."""
    def f(n):
        if n == 0 or n % 2:
            return 0
        return zeta(n) * (2 * (1 - Fraction(1, 2 ** n)))

    return Series.from_function(order, f)


def _half_pi() -> SymExpr:
    return pi() * Fraction(1, 2)


def _quarter_pi() -> SymExpr:
    return pi() * Fraction(1, 4)


def _cs(order: int, sign: int) -> Series:
    """cos(pi z/2) + sign * sin(pi z/2)."""
    return cos_series(order, _half_pi()) + sin_series(order, _half_pi()) * sign


def _A_at(order: int, c) -> Series:
    return A_series(order).compose_linear(c)


def _D_at(order: int, c) -> Series:
    return D_series(order).compose_linear(c)


def _Aprime_at(order: int, c) -> Series:
    """A'(c z), known to ``order``."""
    return A_series(order + 1).derivative().compose_linear(c)


def _Dprime_at(order: int, c) -> Series:
    return D_series(order + 1).derivative().compose_linear(c)


def gt_bar1(order: int) -> Series:
    """sum_r T('1,{1}_r) z^r = (1/z)(-1 + cos(pi z/2) - sin(pi z/2))."""
    return (_cs(order + 1, -1) - 1).divide_z()


def gt_bar2(order: int) -> Series:
    """sum_m T('2,{1}_m) z^{m+1} = -A(z/2) + 2A(z) - 2D(z)(cos + sin)(pi z/2)."""
    return -_A_at(order, Fraction(1, 2)) + A_series(order) * 2 - D_series(order) * _cs(order, 1) * 2


def w_cal(order: int) -> Series:
    """sum_j W(j+1, j) z^j = -2D(z) + (A(z/2) - 2A(z))(cos - sin)(pi z/2)."""
    return -D_series(order) * 2 + (_A_at(order, Fraction(1, 2)) - A_series(order) * 2) * _cs(order, -1)


def gt21(order: int) -> Series:
    """sum_m T(2,{1}_{2m}) z^{2m+1} = (pi/2) tan(pi z/2)."""
    return pi_tan_series(order + 1).divide_z()


def gs21(order: int) -> Series:
    """sum_p S(2,{1}_{2p-1}) z^{2p}.

    The bracket against the tangent carries a factor 2; without it the z^2
    coefficient misses S(2,1) by 3/2 zeta(2) log 2.
    """
    half = Fraction(1, 2)
    head = pi_tan_series(order) * (_A_at(order, half) - A_series(order) - log2()) * 2
    tail = _Aprime_at(order - 1, half).times_z() * (-half) + _Aprime_at(order - 1, 1).times_z() * 2
    return head + tail


def c_half(order: int) -> Series:
    """sum_p z^p/p! * int_0^{pi/2} x^p cot x dx."""
    i = _I
    a2 = _A_at(order, i / 2)
    return a2 - log2() + exp_series(order, _half_pi()) * (-_A_at(order, i / 4) + a2 + log2())


def c_quarter(order: int) -> Series:
    """sum_p z^p/p! * int_0^{pi/4} x^p cot x dx."""
    i = _I
    half = Fraction(1, 2)
    inner = -_A_at(order, i / 8) + _A_at(order, i / 4) - _D_at(order, i / 2) * (2 * i) + log2()
    return _A_at(order, i / 2) - log2() * half + exp_series(order, _quarter_pi()) * inner * half


def r_series(order: int) -> Series:
    """sum_p z^p/p! * int_0^1 arctan(x)^p dx, explicit form in A and D."""
    i = _I
    half = Fraction(1, 2)
    e4 = exp_series(order, _quarter_pi())
    first = (-_A_at(order - 1, i / 4) + _A_at(order - 1, i / 2) + log2()).times_z()
    second = (-_A_at(order - 1, i / 8) + _A_at(order - 1, i / 4)
              + _D_at(order - 1, i / 2) * (2 * i) + log2()).times_z() * half
    return -1 + e4 - first + e4 * second


def r_series_from_cot(order: int) -> Series:
    """R(z) through the cotangent series: -1 + e^{pi z/4} - z e^{pi z/2} (log2/2 + C_half(-z) - C_quarter(-z))."""
    half = Fraction(1, 2)
    e2 = exp_series(order - 1, _half_pi())
    inner = log2() * half + c_half(order - 1).reflect() - c_quarter(order - 1).reflect()
    return -1 + exp_series(order, _quarter_pi()) - (e2 * inner).times_z()


def q1(order: int) -> Series:
    """Q(z) = sum_r z^r/(r-1)! int_0^1 arctan(x)^r/x dx, first expression."""
    i = _I
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    d_part = _Dprime_at(order - 1, i / 2) * 2 - _D_at(order - 1, i / 2) * (pi() * i)
    a_part = _Aprime_at(order - 1, i / 4) - _Aprime_at(order - 1, i / 2) * 4
    return (exp_series(order - 1, _quarter_pi()) * d_part).times_z() * half - a_part.times_z() * (i * quarter)


def q_def(order: int) -> Series:
    """Q(z) straight from int arctan^r/x = (-1)^{floor((r+1)/2)} r!/2^r T('2,{1}_{r-1})."""
    g = gt_bar2(order)

    def f(r):
        if r == 0:
            return 0
        return g.coeff(r) * Fraction((-1) ** ((r + 1) // 2) * r, 2 ** r)

    return Series.from_function(order, f)


def ef_def(order: int) -> Series:
    """E(z) + iF(z) with coefficients from the closed-form corollary."""
    from .closed_forms import cf_qn1

    def f(n):
        if n >= 2 and n % 2 == 0:
            return cf_qn1("S", n // 2)
        if n >= 3 and n % 2 == 1:
            return cf_qn1("T", (n - 1) // 2) * _I
        return 0

    return Series.from_function(order, f)


def ef_rhs(order: int) -> Series:
    """The closed generating-series expression for E(z) + iF(z).

    Middle term carries ``+ pi D(z)``; the opposite sign fails already at z^2.
    """
    i = _I
    half = Fraction(1, 2)
    pt = pi_tan_series(order)
    line1 = -(_A_at(order, Fraction(1, 4)) - _A_at(order, half) * 3 + A_series(order) * 2 + log2()) * pt
    inner = _Aprime_at(order - 1, half) * half - _Aprime_at(order - 1, 1) * 2 + D_series(order - 1) * pi()
    line2 = -inner.times_z()
    line3 = (Series.monomial(beta(2) * 2, 1, order) - _Dprime_at(order - 1, 1).times_z() * 2
             + pt * D_series(order) * 2) * i
    return line1 + line2 + line3


def q2_rhs(order: int, ef: Series | None = None) -> Series:
    """Right-hand side of the second expression for Q(-2iz).

    ``ef`` is E + iF; by default the closed-form corollary values are used.
    """
    i = _I
    ef = ef if ef is not None else ef_def(order)
    em = exp_series(order, -i * _half_pi())
    b2z = Series.monomial(beta(2) * (2 * i), 1, order)
    gs, gt = gs21(order), gt21(order)
    r = r_series(order).compose_linear(-2 * i)
    return (-b2z + (1 - em) * (b2z + gs - gt * i)) - r * gt * i + em * ef


def ef_solved(order: int) -> Series:
    """E + iF obtained by equating both expressions for Q(-2iz) and solving."""
    i = _I
    ep = exp_series(order, i * _half_pi())
    em = exp_series(order, -i * _half_pi())
    b2z = Series.monomial(beta(2) * (2 * i), 1, order)
    gs, gt = gs21(order), gt21(order)
    r = r_series(order).compose_linear(-2 * i)
    rest = -b2z + (1 - em) * (b2z + gs - gt * i) - r * gt * i
    return ep * (q1(order).compose_linear(-2 * i) - rest)


_BUILDERS: dict[str, Callable[[int], Series]] = {
    "A": A_series,
    "D": D_series,
    "PI_TAN": pi_tan_series,
    "EXP": exp_series,
    "SIN": sin_series,
    "COS": cos_series,
    "GT_BAR1": gt_bar1,
    "GT_BAR2": gt_bar2,
    "W_CAL": w_cal,
    "GT21": gt21,
    "GS21": gs21,
    "C_HALF": c_half,
    "C_QUARTER": c_quarter,
    "R": r_series,
    "Q1": q1,
    "Q2_RHS": q2_rhs,
    "EF_RHS": ef_rhs,
    "EF_SOLVED": ef_solved,
    "EF_DEF": ef_def,
    "Q_DEF": q_def,
}

SERIES_NAMES = tuple(_BUILDERS)


@functools.lru_cache(maxsize=256)
def series_build(name: str, order: int = DEFAULT_ORDER) -> Series:
    """Build a named generating series to the given order (at most 20)."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown series {name!r}; known: {', '.join(SERIES_NAMES)}") from None
    if not 1 <= order <= MAX_ORDER:
        raise OrderExceeded(f"series order must lie in 1..{MAX_ORDER}")
    return builder(order)


__all__ = [
    "Series", "series_add", "series_mul", "series_derivative", "series_coeff", "series_compose_linear",
    "series_build", "SERIES_NAMES", "DEFAULT_ORDER", "MAX_ORDER",
    "exp_series", "sin_series", "cos_series", "A_series", "D_series", "pi_tan_series",
    "gt_bar1", "gt_bar2", "w_cal", "gt21", "gs21", "c_half", "c_quarter", "r_series", "r_series_from_cot",
    "q1", "q_def", "ef_def", "ef_rhs", "q2_rhs", "ef_solved",
]
