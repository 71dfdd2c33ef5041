from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from mvk.constants import PrecisionContext, beta_int, const_log2, const_pi, zeta_int
from mvk.errors import BudgetExceeded, DivergentIndex
from mvk.gaussian import GaussQ
from mvk.indices import EV, OD, MixedIndex, expand_M_to_li, li, t_index
from mvk.nested_sums import (
    ACCELERATED,
    DIRECT,
    eval_li,
    eval_li_combination,
    eval_M,
    eval_S,
    eval_T,
    eval_t,
    eval_zeta,
)

I = GaussQ(0, 1)


def test_li2_at_one(ctx):
    r = eval_li(li([2], [1]), ctx)
    assert abs(r.value - const_pi(ctx) ** 2 / 6) < 1e-70
    assert r.error_estimate >= 0
    assert r.method == ACCELERATED


def test_li3_half_plus_half_i(ctx):
    mp = ctx.mp
    x = mp.mpc(0.5, 0.5)
    # |x| < 1: plain geometric series is an independent oracle
    direct = mp.nsum(lambda n: x ** n / n ** 3, [1, mp.inf])
    r = eval_li(li([3], [GaussQ("1/2", "1/2")]), ctx)
    assert abs(r.value - direct) < 1e-60


def test_li13_minus_one_one_against_double_sum(ctx128):
    mp = ctx128.mp
    # Li_{1,3}(-1,1) = sum_{n>m} (-1)^n / (n m^3)
    def term(n):
        n = int(n)
        return (-1) ** n * mp.zeta(3, 1) / n - (-1) ** n * mp.zeta(3, n) / n

    oracle = mp.nsum(term, [1, mp.inf])
    r = eval_li(li([1, 3], [-1, 1]), ctx128)
    assert abs(r.value - oracle) < 1e-20


def test_eval_M_examples(ctx):
    pi = const_pi(ctx)
    assert abs(eval_T([2], None, ctx).value - 1.5 * zeta_int(2, ctx)) < 1e-70
    assert abs(eval_T([1], [-1], ctx).value + pi / 2) < 1e-70
    assert abs(eval_t([2], None, ctx).value - pi ** 2 / 8) < 1e-70
    assert abs(eval_zeta([2], None, ctx).value - zeta_int(2, ctx)) < 1e-70


def test_example_list_values(ctx):
    pi, l2, g = const_pi(ctx), const_log2(ctx), beta_int(2, ctx)
    s = eval_S([2, 1], [1, -1], ctx).value
    assert abs(s - (3.5 * zeta_int(3, ctx) - pi * g - pi ** 2 / 4 * l2)) < 1e-8
    t = eval_T([2, 1, 1], [1, 1, -1], ctx).value
    assert abs(t - (-6 * beta_int(4, ctx) + 3 * zeta_int(2, ctx) * g)) < 1e-8


def test_expand_even_parity():
    combo = expand_M_to_li(MixedIndex((2,), (1,), (EV,)))
    assert combo == {li([2], [1]): GaussQ(1), li([2], [-1]): GaussQ(1)}


def test_all_odd_parity_is_scaled_t(ctx):
    idx = MixedIndex((2, 1), (1, -1), (OD, OD))
    assert abs(eval_M(idx, ctx).value - 4 * eval_t([2, 1], [1, -1], ctx).value) < 1e-70
    assert t_index([2, 1], [1, -1]) == idx


def test_divergent_inputs(ctx):
    with pytest.raises(DivergentIndex):
        eval_li(li([1, 2], [1, -1]), ctx)
    with pytest.raises(DivergentIndex):
        eval_T([1, 2], None, ctx)


def test_budget_exhaustion(ctx):
    with pytest.raises(BudgetExceeded):
        eval_S([2, 1], [1, -1], ctx, budget=64, method=DIRECT)


def test_conditionally_convergent_depth_one(ctx):
    mp = ctx.mp
    l2, pi = const_log2(ctx), const_pi(ctx)
    assert abs(eval_li(li([1], [-1]), ctx).value + l2) < 1e-70
    assert abs(eval_li(li([1], [I]), ctx).value - mp.mpc(-l2 / 2, pi / 4)) < 1e-70
    assert abs(eval_li(li([1], [-I]), ctx).value - mp.mpc(-l2 / 2, -pi / 4)) < 1e-70


@pytest.mark.parametrize("exps,signs,fn", [
    ([2, 1], [1, -1], eval_S),
    ([2, 1, 1], [1, 1, -1], eval_T),
    ([3, 1], [-1, 1], eval_T),
])
def test_direct_route_agrees(ctx128, exps, signs, fn):
    a = fn(exps, signs, ctx128).value
    b = fn(exps, signs, ctx128, method=DIRECT)
    assert b.method == DIRECT
    assert abs(a - b.value) < 1e-8


@pytest.mark.parametrize("x", [GaussQ(-1), I, -I])
@pytest.mark.parametrize("y", [GaussQ(-1), I, -I])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_stuffle_numeric(ctx128, x, y, m):
    lhs = eval_li(li([1], [x]), ctx128).value * eval_li(li([m + 1], [y]), ctx128).value
    rhs = eval_li_combination({li([1, m + 1], [x, y]): GaussQ(1), li([m + 1, 1], [y, x]): GaussQ(1),
                               li([m + 2], [x * y]): GaussQ(1)}, ctx128).value
    assert abs(lhs - rhs) < 1e-9


@pytest.mark.parametrize("r", range(5))
def test_duality_T2(ctx128, r):
    rhs = 2 * (1 - ctx128.mp.ldexp(1, -2 * r - 2)) * zeta_int(2 * r + 2, ctx128)
    assert abs(eval_T([2] + [1] * (2 * r), None, ctx128).value - rhs) < 1e-9


@pytest.mark.parametrize("p", range(6))
def test_distribution(ctx128, p):
    lhs = eval_li(li([p + 1], [I]), ctx128).value + eval_li(li([p + 1], [-I]), ctx128).value
    assert abs(lhs - eval_li(li([p + 1], [-1]), ctx128).value / 2 ** p) < 1e-9


mixed_indices = st.integers(min_value=1, max_value=3).flatmap(
    lambda r: st.tuples(
        st.lists(st.integers(1, 3), min_size=r, max_size=r),
        st.lists(st.sampled_from([1, -1]), min_size=r, max_size=r),
        st.lists(st.sampled_from([EV, OD]), min_size=r, max_size=r),
    )
).map(lambda t: MixedIndex(*map(tuple, t))).filter(lambda idx: idx.convergent)


@given(mixed_indices)
def test_oracle_consistency(idx):
    ctx = PrecisionContext(128)
    direct = eval_M(idx, ctx)
    total = ctx.mp.mpc(0)
    err = ctx.mp.mpf(0)
    for k, c in expand_M_to_li(idx).items():
        rep = eval_li(k, ctx)
        total += c.to_mpc(ctx.mp) * rep.value
        err += abs(c.to_mpc(ctx.mp)) * rep.error_estimate
    assert abs(direct.value - total) <= direct.error_estimate + err + ctx.tolerance


def test_error_honesty_sample():
    ctx = PrecisionContext(64)
    rng = random.Random(3)
    for _ in range(8):
        r = rng.randint(1, 2)
        idx = MixedIndex(tuple(rng.randint(1, 3) for _ in range(r)), tuple(rng.choice((1, -1)) for _ in range(r)),
                         tuple(rng.choice((EV, OD)) for _ in range(r)))
        if not idx.convergent:
            continue
        a = eval_M(idx, ctx, 1 << 14, method=DIRECT, tol=ctx.mp.inf)
        b = eval_M(idx, ctx, 1 << 15, method=DIRECT, tol=ctx.mp.inf)
        assert abs(a.value - b.value) <= a.error_estimate


def test_deterministic(ctx):
    a = eval_S([2, 1, 1, 1], [1, 1, 1, -1], ctx).value
    b = eval_S([2, 1, 1, 1], [1, 1, 1, -1], ctx).value
    assert a == b
