from __future__ import annotations

import pytest

from mvk.constants import PrecisionContext, beta_int, const_log2, const_pi
from mvk.errors import DomainError, QuadratureFailure
from mvk.nested_sums import eval_T
from mvk.quadrature import PI_HALF, PI_QUARTER, quad_arctan_over_x, quad_arctan_pow, quad_cot_moment, tanh_sinh


def test_cot_moment_p1(ctx):
    assert abs(quad_cot_moment(1, PI_HALF, ctx) - const_pi(ctx) / 2 * const_log2(ctx)) < 1e-70


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("upper", [PI_HALF, PI_QUARTER])
def test_cot_moment_against_mpmath_quad(ctx128, p, upper):
    mp = ctx128.mp
    top = mp.pi / 2 if upper == PI_HALF else mp.pi / 4
    ref = mp.quad(lambda x: x ** p * mp.cot(x), [0, top])
    assert abs(quad_cot_moment(p, upper, ctx128) - ref) < 1e-30


def test_arctan_pow_p1(ctx):
    assert abs(quad_arctan_pow(1, ctx) - (const_pi(ctx) / 4 - const_log2(ctx) / 2)) < 1e-70


def test_arctan_over_x_r1(ctx):
    assert abs(quad_arctan_over_x(1, ctx) - beta_int(2, ctx)) < 1e-70


@pytest.mark.parametrize("r", [2, 3, 4])
def test_arctan_over_x_against_nested_sum(ctx128, r):
    from math import factorial

    t = eval_T([2] + [1] * (r - 1), [-1] + [1] * (r - 1), ctx128).value
    rhs = (-1) ** ((r + 1) // 2) * factorial(r) * t / 2 ** r
    assert abs(quad_arctan_over_x(r, ctx128) - rhs) < 1e-7


def test_domain_errors(ctx128):
    with pytest.raises(DomainError):
        quad_cot_moment(0, PI_HALF, ctx128)
    with pytest.raises(DomainError):
        quad_cot_moment(1, "pi/3", ctx128)
    with pytest.raises(DomainError):
        quad_arctan_pow(0, ctx128)


def test_tanh_sinh_reports_error(ctx128):
    value, err = tanh_sinh(lambda x: x * x, 0, 3, ctx128)
    assert abs(value - 9) < 1e-30
    assert err >= 0


def test_tanh_sinh_stall_raises():
    ctx = PrecisionContext(256)
    with pytest.raises(QuadratureFailure):
        tanh_sinh(lambda x: ctx.mp.sin(1 / x), 0, 1, ctx, max_level=4)
