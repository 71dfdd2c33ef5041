from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
from hypothesis import given, strategies as st

from mvk.constants import (
    PrecisionContext,
    bernoulli,
    beta_cvz,
    beta_em,
    beta_int,
    const_log2,
    const_pi,
    euler_number,
    log2_alternating,
    log2_atanh,
    pi_agm,
    pi_machin,
    zeta_cvz,
    zeta_em,
    zeta_int,
)
from mvk.errors import DomainError


def test_pi_against_mpmath(ctx):
    mp = ctx.mp
    assert abs(const_pi(ctx) - mp.pi) < mp.ldexp(1, -250)
    assert mp.nstr(const_pi(ctx), 21) == "3.14159265358979323846"


def test_pi_routes_agree(ctx):
    assert abs(pi_machin(ctx) - pi_agm(ctx)) < ctx.tolerance
    assert const_pi(ctx) / const_pi(ctx) == 1


def test_log2(ctx):
    mp = ctx.mp
    assert mp.nstr(const_log2(ctx), 20) == "0.69314718055994530942"
    assert abs(log2_atanh(ctx) - log2_alternating(ctx)) < ctx.tolerance
    assert abs(mp.exp(const_log2(ctx)) - 2) < ctx.tolerance * 4


def test_zeta_values(ctx):
    mp = ctx.mp
    pi = const_pi(ctx)
    assert abs(zeta_int(2, ctx) - pi ** 2 / 6) < ctx.tolerance
    assert abs(zeta_int(4, ctx) - pi ** 4 / 90) < ctx.tolerance
    assert abs(zeta_int(3, ctx) - mp.zeta(3)) < ctx.tolerance
    assert mp.nstr(zeta_int(3, ctx), 21) == "1.2020569031595942854"


def test_beta_values(ctx):
    mp = ctx.mp
    pi = const_pi(ctx)
    assert abs(beta_int(1, ctx) - pi / 4) < ctx.tolerance
    assert abs(beta_int(2, ctx) - mp.catalan) < ctx.tolerance
    assert abs(beta_int(3, ctx) - pi ** 3 / 32) < ctx.tolerance


@pytest.mark.parametrize("s", [2, 3, 5, 8])
def test_zeta_routes_agree(ctx, s):
    assert abs(zeta_em(s, ctx) - zeta_cvz(s, ctx)) < 1e-70


@pytest.mark.parametrize("s", [1, 2, 4, 7])
def test_beta_routes_agree(ctx, s):
    assert abs(beta_em(s, ctx) - beta_cvz(s, ctx)) < 1e-70


def test_domain_errors(ctx):
    with pytest.raises(DomainError):
        zeta_int(1, ctx)
    with pytest.raises(DomainError):
        beta_int(0, ctx)
    with pytest.raises(DomainError):
        bernoulli(3)
    with pytest.raises(DomainError):
        euler_number(5)
    with pytest.raises(DomainError):
        PrecisionContext(32)
    with pytest.raises(DomainError):
        PrecisionContext(128, 16)


def test_bernoulli_and_euler_examples():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert [euler_number(n) for n in (0, 2, 4, 6)] == [1, -1, 5, -61]


@given(st.integers(min_value=1, max_value=20))
def test_bernoulli_recurrence(m):
    # sum_{k<=m} C(m+1,k) B_k = 0 with B_1 = -1/2
    b = {k: bernoulli(k) for k in range(0, m + 1, 2)}
    b[1] = Fraction(-1, 2)
    assert sum(comb(m + 1, k) * b.get(k, 0) for k in range(m + 1)) == 0


@given(st.integers(min_value=1, max_value=12))
def test_euler_recurrence(m):
    # sum_k C(2m,2k) E_{2k} = 0
    assert sum(comb(2 * m, 2 * k) * euler_number(2 * k) for k in range(m + 1)) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_zeta_even_bernoulli_formula(ctx, n):
    mp = ctx.mp
    b = bernoulli(2 * n)
    rhs = (-1) ** (n + 1) * mp.mpf(b.numerator) / b.denominator * (2 * const_pi(ctx)) ** (2 * n) / (2 * factorial(2 * n))
    assert abs(zeta_int(2 * n, ctx) - rhs) < 1e-30


@pytest.mark.parametrize("k", range(0, 5))
def test_beta_odd_euler_formula(ctx, k):
    mp = ctx.mp
    rhs = mp.mpf((-1) ** k * euler_number(2 * k)) * const_pi(ctx) ** (2 * k + 1) / (4 ** (k + 1) * factorial(2 * k))
    assert abs(beta_int(2 * k + 1, ctx) - rhs) < 1e-30


@given(st.sampled_from(["pi", "log2", "zeta3", "beta2", "zeta5"]))
def test_precision_monotone(name):
    f = {
        "pi": const_pi,
        "log2": const_log2,
        "zeta3": lambda c: zeta_int(3, c),
        "zeta5": lambda c: zeta_int(5, c),
        "beta2": lambda c: beta_int(2, c),
    }[name]
    lo, hi = PrecisionContext(64), PrecisionContext(256)
    v_lo = f(lo)
    assert abs(lo.mp.mpf(f(hi)) - v_lo) <= lo.mp.ldexp(abs(v_lo), -62)


def test_from_env(monkeypatch):
    monkeypatch.setenv("MVK_PREC_BITS", "96")
    assert PrecisionContext.from_env().working_bits == 96
    monkeypatch.delenv("MVK_PREC_BITS")
    assert PrecisionContext.from_env().working_bits == 256


def test_contexts_do_not_touch_global_precision():
    before = mpmath.mp.prec
    const_pi(PrecisionContext(512))
    assert mpmath.mp.prec == before
