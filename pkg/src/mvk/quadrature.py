"""Tanh-sinh quadrature and the cotangent/arctangent integrals built on it."""

from __future__ import annotations

from typing import Callable

from .constants import PrecisionContext, const_pi
from .errors import DomainError, QuadratureFailure

PI_HALF = "pi/2"
PI_QUARTER = "pi/4"


def tanh_sinh(f: Callable, a, b, ctx: PrecisionContext, tol=None, max_level: int = 14):
    """Integrate ``f`` over [a, b] by the double-exponential rule.

    Nodes ``x = c + d tanh(pi/2 sinh t)`` are refined by halving ``h`` until
    two successive levels agree to ``tol`` (default ``2^-working_bits``).
    Distances to the endpoints are computed as ``d * 2 / (1 + exp(2u))`` so
    nodes never collapse onto a or b.  Returns ``(value, error_estimate)``.
    """
    mp = ctx.mp
    a = mp.mpf(a)
    b = mp.mpf(b)
    if tol is None:
        tol = mp.ldexp(1, -ctx.working_bits)
    c = (a + b) / 2
    d = (b - a) / 2
    half_pi = const_pi(ctx) / 2
    eps = mp.ldexp(1, -ctx.total_bits)
    # t_max: where the weights fall below eps
    t_max = mp.mpf(1)
    while True:
        u = half_pi * mp.sinh(t_max)
        w = half_pi * mp.cosh(t_max) / mp.cosh(u) ** 2
        if w * abs(d) < eps * eps ** 0.5 or u > ctx.total_bits:
            break
        t_max += mp.mpf(1) / 4

    def contribution(t):
        u = half_pi * mp.sinh(t)
        weight = half_pi * mp.cosh(t) / mp.cosh(u) ** 2
        gap = 2 * d / (1 + mp.exp(2 * u))  # d (1 - tanh u)
        total = mp.mpf(0)
        x_hi = b - gap
        x_lo = a + gap
        if x_hi != b:
            total += f(x_hi)
        if t != 0 and x_lo != a:
            total += f(x_lo)
        return weight * total

    h = mp.mpf(1)
    n = int(t_max / h) + 1
    acc = sum(contribution(j * h) for j in range(n + 1))
    estimate = acc * h * d
    err = None
    for level in range(1, max_level + 1):
        h /= 2
        n = int(t_max / h) + 1
        acc += sum(contribution(j * h) for j in range(1, n + 1, 2))
        new = acc * h * d
        diff = abs(new - estimate)
        estimate = new
        if err is not None and level >= 3 and diff <= tol:
            return estimate, diff
        err = diff
    raise QuadratureFailure(f"tanh-sinh did not reach {mp.nstr(tol, 3)} (last change {mp.nstr(err, 3)})")


def quad_cot_moment(p: int, upper: str, ctx: PrecisionContext | None = None, tol=None):
    """Integral of x^p cot(x) over [0, pi/2] or [0, pi/4]."""
    ctx = ctx or PrecisionContext()
    if p < 1:
        raise DomainError("cotangent moment needs p >= 1")
    pi = const_pi(ctx)
    if upper == PI_HALF:
        top = pi / 2
    elif upper == PI_QUARTER:
        top = pi / 4
    else:
        raise DomainError(f"upper limit must be {PI_HALF!r} or {PI_QUARTER!r}")
    mp = ctx.mp
    value, _ = tanh_sinh(lambda x: x ** p * mp.cot(x), 0, top, ctx, tol)
    return value


def quad_arctan_pow(p: int, ctx: PrecisionContext | None = None, tol=None):
    """r(p): integral of arctan(x)^p over [0, 1]."""
    ctx = ctx or PrecisionContext()
    if p < 1:
        raise DomainError("arctan power needs p >= 1")
    mp = ctx.mp
    value, _ = tanh_sinh(lambda x: mp.atan(x) ** p, 0, 1, ctx, tol)
    return value


def quad_arctan_over_x(r: int, ctx: PrecisionContext | None = None, tol=None):
    """Integral of arctan(x)^r / x over [0, 1]."""
    ctx = ctx or PrecisionContext()
    if r < 1:
        raise DomainError("arctan power needs r >= 1")
    mp = ctx.mp
    value, _ = tanh_sinh(lambda x: mp.atan(x) ** r / x, 0, 1, ctx, tol)
    return value
