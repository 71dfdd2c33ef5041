"""Exact Gaussian rationals, the coefficient field Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class GaussQ:
    """Immutable element ``re + im*i`` of Q(i) with Fraction parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussQ):
            re, im = re.re, re.im + Fraction(im)
        if isinstance(re, complex):
            re, im = _exact_float(re.real), _exact_float(re.imag) + Fraction(im)
        elif isinstance(re, float):
            re = _exact_float(re)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    @classmethod
    def coerce(cls, x) -> GaussQ:
        return x if isinstance(x, GaussQ) else cls(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.im:
            return GaussQ(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussQ(self.re * o.re, self.re * o.im)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> GaussQ:
        norm = self.norm()
        if not norm:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussQ(self.re / norm, -self.im / norm)

    def conjugate(self) -> GaussQ:
        return GaussQ(self.re, -self.im) if self.im else self

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # predicates / conversions --------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.re) if not self.im else hash((self.re, self.im))
            object.__setattr__(self, "_hash", h)
        return h

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def sort_key(self):
        return (self.re, self.im)

    def to_mpc(self, mp):
        return mp.mpc(mp.mpf(self.re.numerator) / self.re.denominator,
                      mp.mpf(self.im.numerator) / self.im.denominator)

    def __repr__(self):
        return f"GaussQ({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_gauss(self)


def _exact_float(x: float) -> Fraction:
    return Fraction(x).limit_denominator(1 << 20) if x != int(x) else Fraction(int(x))


def _coerce(x):
    if isinstance(x, GaussQ):
        return x
    if isinstance(x, (int, Rational)):
        return GaussQ(x)
    if isinstance(x, complex) and x.real == int(x.real) and x.imag == int(x.imag):
        return GaussQ(int(x.real), int(x.imag))
    return NotImplemented


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussQ) -> str:
    """Render as ``a``, ``b*i``, ``i``, or ``(a+b*i)``."""
    if not z.im:
        return _format_fraction(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = _format_fraction(z.im) + "*i"
    if not z.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"({_format_fraction(z.re)}{sign}{im})"


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)
FOURTH_ROOTS = (GaussQ(1), GaussQ(-1), GaussQ(0, 1), GaussQ(0, -1))
