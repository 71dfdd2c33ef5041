"""Registry of verification checks and the machinery to run them.

Every check is a named, pure function of ``(ctx, budget)`` returning one of
three outcome kinds:

* :class:`Numeric` - two numbers compared with a tolerance,
* :class:`Exact` - a list of SymExpr residuals that must all canonicalise to 0,
* :class:`Count` - a number of violations that must be 0.

Check ids are ``/``-separated paths; ``accNN/`` prefixes mark the acceptance
criteria, the remaining prefixes mirror the package modules.
"""

from __future__ import annotations

import functools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb, factorial
from typing import Callable, Iterable

import mpmath

from .constants import (
    PrecisionContext,
    beta_cvz,
    beta_em,
    beta_int,
    bernoulli,
    euler_number,
    log2_alternating,
    log2_atanh,
    pi_agm,
    pi_machin,
    zeta_cvz,
    zeta_em,
    zeta_int,
)
from .errors import DivergentCombination
from .gaussian import GaussQ
from .indices import LiIndex, MixedIndex, EV, OD, expand_M_to_li, li
from .nested_sums import DEFAULT_BUDGET, eval_li, eval_M, eval_S, eval_T, eval_t
from .parsing import parse_expr
from .quadrature import PI_HALF, PI_QUARTER, quad_arctan_over_x, quad_arctan_pow, quad_cot_moment, tanh_sinh
from . import closed_forms as cf
from . import series as ser
from .symbolic import (
    BETA,
    LI,
    LOG2,
    MIXED,
    PI,
    ZETA,
    ZETA_ALT,
    SymExpr,
    canonicalize,
    equal_canonical,
    num_eval,
    pi,
)
from . import words as W

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
DEFAULT_TOL = 1e-7

I = GaussQ(0, 1)
UNITS = (GaussQ(1), GaussQ(-1), I, -I)


# ---------------------------------------------------------------------------
# outcomes and records

@dataclass
class Numeric:
    lhs: object
    rhs: object


@dataclass
class Exact:
    residuals: list[SymExpr]


@dataclass
class Count:
    bad: int
    detail: str = ""


@dataclass(frozen=True)
class Check:
    check_id: str
    fn: Callable
    anchor: str
    tol: float | None = None  # None: use the run-wide tolerance


@dataclass(frozen=True)
class VerifyRecord:
    check: str
    status: str
    lhs: str
    rhs: str
    diff: str
    tolerance: str
    runtime_ms: int
    anchor: str
    error: str = ""

    def to_json(self) -> str:
        d = {
            "check": self.check,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "diff": self.diff,
            "tolerance": self.tolerance,
            "runtime_ms": self.runtime_ms,
            "anchor": self.anchor,
        }
        if self.error:
            d["error"] = self.error
        return json.dumps(d)

    @property
    def passed(self) -> bool:
        return self.status == PASS


_FMT_MP = PrecisionContext(256).mp


def fmt(x, mp=None) -> str:
    """Scientific notation with 20 significant digits; complex as ``a+bj``."""
    mp = mp or _FMT_MP
    if isinstance(x, Fraction):
        x = mp.mpf(x.numerator) / x.denominator
    elif isinstance(x, float):
        x = mp.mpf(repr(x))
    x = mp.mpmathify(x)
    if isinstance(x, mp.mpc):
        if x.imag == 0:
            return fmt(x.real, mp)
        sign = "-" if x.imag < 0 else "+"
        return f"{fmt(x.real, mp)}{sign}{fmt(abs(x.imag), mp)}j"
    if x == 0:
        return "0.0000000000000000000e+0"
    text = mp.nstr(x, 20, strip_zeros=False, min_fixed=1, max_fixed=0)
    return text if "e" in text else text + "e+0"


def _finish(check: Check, outcome, tol: float, ms: int, ctx: PrecisionContext) -> VerifyRecord:
    mp = ctx.mp
    if isinstance(outcome, Numeric):
        lhs, rhs = mp.mpmathify(outcome.lhs), mp.mpmathify(outcome.rhs)
        diff = abs(lhs - rhs)
        ok = diff <= tol
        return VerifyRecord(check.check_id, PASS if ok else FAIL, fmt(lhs, mp), fmt(rhs, mp), fmt(diff, mp),
                            fmt(tol, mp), ms, check.anchor)
    if isinstance(outcome, Exact):
        bad = [r for r in outcome.residuals if not canonicalize(SymExpr.coerce(r)).is_zero()]
        diff = mp.mpf(0)
        for r in bad:
            v = abs(num_eval(r, ctx).value)
            diff = max(diff, v if v > 0 else mp.ldexp(1, -ctx.working_bits))
        return VerifyRecord(check.check_id, FAIL if bad else PASS, fmt(len(bad)), fmt(0), fmt(diff),
                            fmt(0), ms, check.anchor, "; ".join(str(b) for b in bad[:3]))
    if isinstance(outcome, Count):
        return VerifyRecord(check.check_id, FAIL if outcome.bad else PASS, fmt(outcome.bad), fmt(0),
                            fmt(outcome.bad), fmt(0), ms, check.anchor, outcome.detail)
    raise TypeError(f"check {check.check_id} returned {type(outcome).__name__}")


def run_check(check: Check, prec_bits: int = 256, budget: int = DEFAULT_BUDGET,
              tol: float = DEFAULT_TOL) -> VerifyRecord:
    ctx = PrecisionContext(prec_bits)
    t = check.tol if check.tol is not None else tol
    start = time.perf_counter()
    try:
        outcome = check.fn(ctx, budget)
    except Exception as exc:  # a crashing check is a failing check
        ms = int((time.perf_counter() - start) * 1000)
        return VerifyRecord(check.check_id, FAIL, "nan", "nan", "inf", fmt(t), ms, check.anchor,
                            f"{type(exc).__name__}: {exc}")
    ms = int((time.perf_counter() - start) * 1000)
    return _finish(check, outcome, t, ms, ctx)


# ---------------------------------------------------------------------------
# helpers used by the checks

def _N(e, ctx):
    return num_eval(e, ctx).value


def _ones(n: int) -> list[int]:
    return [1] * n


def _series(name: str, order: int):
    return ser.series_build(name, order)


def _tbar1(r: int) -> SymExpr:
    """T('1,{1}_r) with the boundary value T('1,{1}_{-1}) = 1."""
    if r == -1:
        return SymExpr.const(1)
    return _series("GT_BAR1", max(r, 1)).coeff(r)


def _tbar2(r: int) -> SymExpr:
    """T('2,{1}_{r-1})."""
    return _series("GT_BAR2", max(r, 1)).coeff(r)


def _wcal(j: int) -> SymExpr:
    return _series("W_CAL", max(j, 1)).coeff(j)


def _random_word(rng: random.Random, max_len: int = 6) -> W.IIWord:
    letters = [GaussQ(0), GaussQ(1), GaussQ(-1), I, -I]
    while True:
        n = rng.randint(1, max_len)
        ls = [rng.choice(letters) for _ in range(n)]
        w = W.word(1, ls, 0)
        if w.convergent and sum(1 for x in ls if x) <= 3:
            return w


def _random_mixed(rng: random.Random) -> MixedIndex:
    depth = rng.randint(1, 3)
    exps = [rng.randint(1, 3) for _ in range(depth)]
    signs = [rng.choice((1, -1)) for _ in range(depth)]
    par = [rng.choice((EV, OD)) for _ in range(depth)]
    idx = MixedIndex(tuple(exps), tuple(signs), tuple(par))
    if not idx.convergent:
        return _random_mixed(rng)
    return idx


# ---------------------------------------------------------------------------
# checks: bignum-constants

def c_const_monotone(name, ctx, budget):
    fns = {"pi": lambda c: pi_machin(c), "log2": log2_atanh, "zeta3": lambda c: zeta_int(3, c),
           "beta2": lambda c: beta_int(2, c)}
    f = fns[name]
    lo = f(PrecisionContext(64))
    hi = f(PrecisionContext(256))
    mp64 = PrecisionContext(64).mp
    return Numeric(mp64.mpf(lo), mp64.mpf(hi))


def c_const_dual(name, ctx, budget):
    pairs = {
        "pi": (pi_machin, pi_agm),
        "log2": (log2_atanh, log2_alternating),
        "zeta3": (lambda c: zeta_em(3, c), lambda c: zeta_cvz(3, c)),
        "zeta5": (lambda c: zeta_em(5, c), lambda c: zeta_cvz(5, c)),
        "beta2": (lambda c: beta_em(2, c), lambda c: beta_cvz(2, c)),
        "beta4": (lambda c: beta_em(4, c), lambda c: beta_cvz(4, c)),
    }
    a, b = pairs[name]
    return Numeric(a(ctx), b(ctx))


def c_zeta_even(n, ctx, budget):
    mp = ctx.mp
    b = bernoulli(2 * n)
    rhs = (-1) ** (n + 1) * (mp.mpf(b.numerator) / b.denominator) * (2 * pi_machin(ctx)) ** (2 * n) / (2 * factorial(2 * n))
    return Numeric(zeta_em(2 * n, ctx), rhs)


def c_beta_odd(k, ctx, budget):
    mp = ctx.mp
    rhs = mp.mpf((-1) ** k * euler_number(2 * k)) * pi_machin(ctx) ** (2 * k + 1) / (4 ** (k + 1) * factorial(2 * k))
    return Numeric(beta_em(2 * k + 1, ctx), rhs)


# ---------------------------------------------------------------------------
# checks: nested-sums

def c_oracle_consistency(seed, ctx, budget):
    rng = random.Random(seed)
    idx = _random_mixed(rng)
    direct = eval_M(idx, ctx, budget).value
    total = ctx.mp.mpc(0)
    for li_idx, c in expand_M_to_li(idx).items():
        total += c.to_mpc(ctx.mp) * eval_li(li_idx, ctx, budget).value
    return Numeric(direct, total)


def c_stuffle_numeric(x, y, m, ctx, budget):
    lhs = eval_li(li([1], [x]), ctx, budget).value * eval_li(li([m + 1], [y]), ctx, budget).value
    rhs = (eval_li(li([1, m + 1], [x, y]), ctx, budget).value
           + eval_li(li([m + 1, 1], [y, x]), ctx, budget).value
           + eval_li(li([m + 2], [x * y]), ctx, budget).value)
    return Numeric(lhs, rhs)


def c_duality_T2(r, ctx, budget):
    """T(2,{1}_{2r}) = 2(1 - 2^(-2r-2)) zeta(2r+2)."""
    rhs = 2 * (1 - ctx.mp.ldexp(1, -2 * r - 2)) * zeta_em(2 * r + 2, ctx)
    return Numeric(eval_T([2] + _ones(2 * r), None, ctx, budget=budget).value, rhs)


def c_distribution(p, ctx, budget):
    lhs = eval_li(li([p + 1], [I]), ctx, budget).value + eval_li(li([p + 1], [-I]), ctx, budget).value
    rhs = eval_li(li([p + 1], [-1]), ctx, budget).value / 2 ** p
    return Numeric(lhs, rhs)


def c_error_honesty(seed, ctx, budget):
    """Direct route: doubling the budget stays within the smaller run's error estimate."""
    rng = random.Random(seed)
    small = max(budget // 16, 1 << 14)
    bad = 0
    worst = ""
    for _ in range(50):
        idx = _random_mixed(rng)
        a = eval_M(idx, ctx, small, method="direct", tol=ctx.mp.inf)
        b = eval_M(idx, ctx, 2 * small, method="direct", tol=ctx.mp.inf)
        if abs(a.value - b.value) > a.error_estimate:
            bad += 1
            worst = str(idx)
    return Count(bad, worst)


def c_direct_vs_accelerated(spec, ctx, budget):
    exps, signs, ctor = spec
    fn = {"T": eval_T, "S": eval_S}[ctor]
    a = fn(exps, signs, ctx, budget=budget).value
    b = fn(exps, signs, ctx, budget=budget, method="direct").value
    return Numeric(a, b)


# ---------------------------------------------------------------------------
# checks: word-algebra

def c_shuffle_laws(seed, ctx, budget):
    rng = random.Random(seed)
    bad = 0
    for _ in range(20):
        u, v, w = (_random_word(rng, 3) for _ in range(3))
        if W.shuffle(u, v) != W.shuffle(v, u):
            bad += 1
        left = W.single(u) * W.shuffle(v, w)
        right = W.shuffle(u, v) * W.single(w)
        if left != right:
            bad += 1
    return Count(bad)


def c_antipode(seed, ctx, budget):
    rng = random.Random(seed)
    w = _random_word(rng)
    return Numeric(W.eval_combo(W.antipode_combo(w), ctx, budget).value, 0)


def c_roundtrip(seed, ctx, budget):
    rng = random.Random(seed)
    bad = 0
    for _ in range(100):
        depth = rng.randint(1, 3)
        exps = [rng.randint(1, 8 // depth) for _ in range(depth)]
        args = [rng.choice(UNITS) for _ in range(depth)]
        idx = li(exps, args)
        if not idx.convergent:
            continue
        sign, w = W.li_to_word(idx)
        sign2, back = W.word_to_li(w)
        if back != idx or sign * sign2 != 1:
            bad += 1
    return Count(bad)


def c_reg_consistency(y, m, ctx, budget):
    idx = li([1, m + 1], [1, y])
    sign, w = W.li_to_word(idx)
    shuffle_val = W.eval_combo(W.reg_shuffle(w), ctx, budget).value * sign
    stuffle_val = ctx.mp.mpc(0)
    for k, c in W.stuffle_regularize(idx).items():
        stuffle_val += ctx.mp.mpf(c.numerator) / c.denominator * eval_li(k, ctx, budget).value
    return Numeric(shuffle_val, stuffle_val)


def c_shuffle_hom(seed, ctx, budget):
    rng = random.Random(seed)
    u, v = _random_word(rng, 3), _random_word(rng, 3)
    lhs = W.eval_combo(W.shuffle(u, v), ctx, budget).value
    rhs = W.eval_iiword(u, ctx, budget).value * W.eval_iiword(v, ctx, budget).value
    return Numeric(lhs, rhs)


def c_iab_sumreg(m, ctx, budget):
    A, B, C = GaussQ(1), -I, -I
    z = GaussQ(0)
    total = W.WordCombo()
    for b in range(m + 1):
        a = m - b
        for p in range(a + 1):
            q = a - p
            letters = [B] + [z] * q + [A] + [z] * (b + p)
            total = total + W.single(W.word(C, letters, 0), (-1) ** b * comb(b + p, p))
    target = W.single(W.word(C, [B] + [z] * m + [A], 0))
    diff = total - target
    return Count(sum(1 for _ in diff), "" if not len(diff) else repr(diff))


# ---------------------------------------------------------------------------
# checks: symbolic-constants

def _random_expr(rng: random.Random) -> SymExpr:
    from .symbolic import beta, log2, zeta, zeta_alt, Li

    atoms = [pi(), log2(), zeta(2), zeta(3), zeta(4), beta(1), beta(2), beta(3), zeta_alt(1),
             zeta_alt(3), Li([2], [I]), Li([3], [-1])]
    e = SymExpr()
    for _ in range(rng.randint(1, 4)):
        term = SymExpr.const(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        for _ in range(rng.randint(1, 3)):
            term = term * rng.choice(atoms)
        e = e + term
    return e


def c_canonical(seed, ctx, budget):
    rng = random.Random(seed)
    bad = 0
    for _ in range(100):
        e = _random_expr(rng)
        c = canonicalize(e)
        if canonicalize(c) != c:
            bad += 1
            continue
        if abs(_N(e, ctx) - _N(c, ctx)) > 1e-40:
            bad += 1
    return Count(bad)


def c_equal_sound(seed, ctx, budget):
    rng = random.Random(seed)
    bad = 0
    for _ in range(50):
        e1 = _random_expr(rng)
        e2 = canonicalize(e1) + SymExpr()
        if equal_canonical(e1, e2) and abs(_N(e1, ctx) - _N(e2, ctx)) > 1e-40:
            bad += 1
    return Count(bad)


# ---------------------------------------------------------------------------
# checks: formal-series

def _half_pi_z(order):
    return pi() * Fraction(1, 2)


def _cos(order):
    return ser.cos_series(order, _half_pi_z(order))


def _sin(order):
    return ser.sin_series(order, _half_pi_z(order))


def c_w_system(order, ctx, budget):
    w = _series("W_CAL", order)
    wm = w.reflect()
    c, s, d = _cos(order), _sin(order), ser.D_series(order)
    full_l = (c * (w - wm) + s * (w + wm)) * Fraction(1, 2)
    full_r = -(c * d) * 2
    odd_l = (w + wm) * Fraction(1, 2)
    odd_r = (ser.A_series(order).compose_linear(Fraction(1, 2)) - ser.A_series(order) * 2) * c
    return Exact([full_l.coeff(n) - full_r.coeff(n) for n in range(order + 1)]
                 + [odd_l.coeff(n) - odd_r.coeff(n) for n in range(order + 1)])


def c_g_system(order, ctx, budget):
    g = _series("GT_BAR2", order)
    gm = g.reflect()
    w = _series("W_CAL", order)
    wm = w.reflect()
    c, s, d = _cos(order), _sin(order), ser.D_series(order)
    odd_l = (g - gm) * Fraction(1, 2)
    odd_r = -(c * d) * 2
    w2_l = w + wm
    w2_r = -(g * (c - s)) - gm * (c + s)
    return Exact([odd_l.coeff(n) - odd_r.coeff(n) for n in range(order + 1)]
                 + [w2_l.coeff(n) - w2_r.coeff(n) for n in range(order + 1)])


def c_ef_end_to_end(order, ctx, budget):
    a = ser.ef_rhs(order)
    b = ser.ef_solved(order)
    n = min(a.order, b.order)
    return Exact([a.coeff(k) - b.coeff(k) for k in range(n + 1)])


def c_q_forms(order, ctx, budget):
    q1 = ser.q1(order)
    q2 = ser.q2_rhs(order)
    qd = ser.q_def(order)
    q1m = q1.compose_linear(-2 * I)
    return Exact([q2.coeff(k) - q1m.coeff(k) for k in range(order + 1)]
                 + [qd.coeff(k) - q1.coeff(k) for k in range(order + 1)])


def c_r_forms(order, ctx, budget):
    a, b = ser.r_series(order), ser.r_series_from_cot(order)
    return Exact([a.coeff(k) - b.coeff(k) for k in range(order + 1)])


def c_gs21(order, ctx, budget):
    g = _series("GS21", order)
    return Exact([g.coeff(2 * p) - cf.cf_S2_ones(p) for p in range(1, order // 2 + 1)]
                 + [g.coeff(2 * p + 1) for p in range(order // 2)])


def c_weighted(p, ctx, budget):
    """T('2,{1}_{2p-2}) = sum_j (-1)^(j-1) T('1,{1}_{2p-2-j}) W(j+1,j)."""
    lhs = _tbar2(2 * p - 1)
    rhs = SymExpr()
    for j in range(1, 2 * p):
        rhs = rhs + _tbar1(2 * p - 2 - j) * _wcal(j) * (-1) ** (j - 1)
    return Exact([lhs - rhs])


def c_w_odd2(p, ctx, budget):
    """W(2p+1,2p) = -sum_{j=1}^{2p} T('1,{1}_{2p-j-1}) T('2,{1}_{j-1})."""
    lhs = _wcal(2 * p)
    rhs = SymExpr()
    for j in range(1, 2 * p + 1):
        rhs = rhs - _tbar1(2 * p - j - 1) * _tbar2(j)
    return Exact([lhs - rhs])


def _series_at(name: str, z, ctx, order: int = 12):
    s = _series(name, order)
    mp = ctx.mp
    total = mp.mpc(0)
    for n in range(order + 1):
        c = s.coeff(n)
        if c:
            total += _N(c, ctx) * z ** n
    return total


def c_spot(name, ctx, budget):
    mp = ctx.mp
    z = mp.mpf(1) / 10
    h = mp.pi / 2
    if name == "PI_TAN":
        closed = h * z * mp.tan(h * z)
    elif name == "GT_BAR1":
        closed = (-1 + mp.cos(h * z) - mp.sin(h * z)) / z
    elif name == "C_HALF":
        closed = tanh_sinh(lambda x: mp.expm1(z * x) * mp.cot(x), 0, h, ctx)[0]
    elif name == "C_QUARTER":
        closed = tanh_sinh(lambda x: mp.expm1(z * x) * mp.cot(x), 0, h / 2, ctx)[0]
    elif name == "R":
        closed = tanh_sinh(lambda x: mp.expm1(z * mp.atan(x)), 0, 1, ctx)[0]
    else:
        raise KeyError(name)
    return Numeric(_series_at(name, z, ctx), closed)


def c_series_vs_oracle(kind, n, ctx, budget):
    """Named-series coefficients against the nested-sum / quadrature oracles."""
    mp = ctx.mp
    if kind == "GT_BAR2":
        return Numeric(_N(_tbar2(n), ctx), eval_T([2] + _ones(n - 1), [-1] + _ones(n - 1), ctx, budget=budget).value)
    if kind == "Q1":
        c = _series("Q1", n).coeff(n)
        return Numeric(_N(c, ctx), quad_arctan_over_x(n, ctx) / factorial(n - 1))
    if kind == "R":
        c = _series("R", n).coeff(n)
        return Numeric(_N(c, ctx), quad_arctan_pow(n, ctx) / factorial(n))
    if kind == "C_HALF":
        c = _series("C_HALF", n).coeff(n)
        return Numeric(_N(c, ctx), quad_cot_moment(n, PI_HALF, ctx) / factorial(n))
    if kind == "C_QUARTER":
        c = _series("C_QUARTER", n).coeff(n)
        return Numeric(_N(c, ctx), quad_cot_moment(n, PI_QUARTER, ctx) / factorial(n))
    if kind == "W_CAL":
        oracle = mp.mpf(0)
        for pos in range(n):
            exps = [1] * n
            exps[pos] = 2
            oracle += eval_T(exps, [-1] + _ones(n - 1), ctx, budget=budget).value.real
        return Numeric(_N(_wcal(n), ctx), oracle)
    raise KeyError(kind)


# ---------------------------------------------------------------------------
# checks: closed-forms

_LOG2_OK_S = (PI, LOG2, ZETA, BETA)


def _kinds(e: SymExpr) -> set[str]:
    return {sym.kind for sym in e.symbols()}


def c_qn1_oracle(kind, m, ctx, budget):
    if kind == "S":
        o = eval_S([2] + _ones(2 * m - 1), _ones(2 * m - 1) + [-1], ctx, budget=budget)
    else:
        o = eval_T([2] + _ones(2 * m), _ones(2 * m) + [-1], ctx, budget=budget)
    return Numeric(_N(cf.cf_qn1(kind, m), ctx), o.value)


def c_qn1_structure(m, ctx, budget):
    bad = 0
    detail = []
    t = cf.cf_qn1("T", m)
    for mono, c in t.items():
        if any(sym.kind == LOG2 for sym, _ in mono):
            bad += 1
            detail.append(f"T: {mono}")
    s = cf.cf_qn1("S", m)
    log_terms = [(mono, c) for mono, c in s.items() if any(sym.kind == LOG2 for sym, _ in mono)]
    expected = canonicalize(SymExpr.coerce(cf.log2() * cf.zeta(2 * m) * (2 * (1 - Fraction(1, 4 ** m)))))
    got = SymExpr(dict(log_terms))
    if not equal_canonical(got, -expected):
        bad += 1
        detail.append(f"S log2 part {got}")
    return Count(bad, "; ".join(detail))


def c_ef_vs_qn1(order, ctx, budget):
    a = ser.ef_rhs(order)
    res = []
    for n in range(order + 1):
        if n >= 2 and n % 2 == 0:
            res.append(a.coeff(n) - cf.cf_qn1("S", n // 2))
        elif n >= 3:
            res.append(a.coeff(n) - cf.cf_qn1("T", (n - 1) // 2) * I)
        else:
            res.append(a.coeff(n))
    return Exact(res)


def c_ef_runtime(order, ctx, budget):
    ser.series_build.cache_clear()
    cf.cf_qn1.cache_clear()
    start = time.perf_counter()
    c_ef_vs_qn1(order, ctx, budget)
    return Numeric(time.perf_counter() - start, 0)


def c_cot(p, quarter, ctx, budget):
    q = quad_cot_moment(p, PI_QUARTER if quarter else PI_HALF, ctx)
    return Numeric(_N(cf.cf_cot_moment(p, quarter), ctx), q)


def c_r(p, ctx, budget):
    return Numeric(_N(cf.cf_r(p), ctx), quad_arctan_pow(p, ctx))


def c_arctan_over_x(r, ctx, budget):
    o = eval_T([2] + _ones(r - 1), [-1] + _ones(r - 1), ctx, budget=budget).value
    rhs = o * (-1) ** ((r + 1) // 2) * factorial(r) / ctx.mp.mpf(2) ** r
    return Numeric(quad_arctan_over_x(r, ctx), rhs)


def _oracle_Tbar2_bar1(m, ctx, budget):
    return eval_T([2] + _ones(m), [-1] + _ones(m - 1) + [-1], ctx, budget=budget).value


def _oracle_Sbar2_1(m, ctx, budget):
    return eval_S([2] + _ones(m), [-1] + _ones(m), ctx, budget=budget).value


def _oracle_Sbar2_bar1(m, ctx, budget):
    return eval_S([2] + _ones(m), [-1] + _ones(m - 1) + [-1], ctx, budget=budget).value


def c_thm12(ell, ctx, budget):
    return Numeric(_N(cf.cf_Tbar2_ones_bar1(2 * ell), ctx), _oracle_Tbar2_bar1(2 * ell, ctx, budget))


def c_thm12_structure(ell, ctx, budget):
    e = cf.cf_Tbar2_ones_bar1(2 * ell)
    bad = []
    for mono, c in e.items():
        weight = 0
        for sym, power in mono:
            if sym.kind == PI or sym.kind == BETA and sym.data % 2 == 0:
                weight += sym.weight * power
            else:
                bad.append(str(sym))
        if weight != 2 * ell + 2:
            bad.append(f"weight {weight}")
    return Count(len(bad), ", ".join(bad))


def c_tbar2_bar1_general(m, ctx, budget):
    return Numeric(_N(cf.cf_Tbar2_ones_bar1(m, "general"), ctx), _oracle_Tbar2_bar1(m, ctx, budget))


def c_sbar2_1(m, form, ctx, budget):
    return Numeric(_N(cf.cf_Sbar2_ones_1(m, form), ctx), _oracle_Sbar2_1(m, ctx, budget))


def c_sbar2_bar1(ell, form, ctx, budget):
    return Numeric(_N(cf.cf_Sbar2_ones_bar1(ell, form), ctx), _oracle_Sbar2_bar1(2 * ell, ctx, budget))


def c_sbar2_bar1_any(m, ctx, budget):
    return Numeric(_N(cf.cf_Sbar2_ones_bar1_any(m), ctx), _oracle_Sbar2_bar1(m, ctx, budget))


def c_t_double(ell, ctx, budget):
    return Numeric(_N(cf.cf_t_double(ell), ctx), eval_t([1, 2 * ell + 1], [-1, -1], ctx, budget=budget).value)


def c_weight3(ctx, budget):
    return Numeric(_N(cf.cf_Tbar2_bar1_weight3(), ctx), _oracle_Tbar2_bar1(1, ctx, budget))


def c_cf_simple(name, n, ctx, budget):
    if name == "Tbar1_ones":
        return Numeric(_N(cf.cf_Tbar1_ones(n), ctx), eval_T(_ones(n + 1), [-1] + _ones(n), ctx, budget=budget).value)
    if name == "Tbar1_ones_bar1":
        return Numeric(_N(cf.cf_Tbar1_ones_bar1(n), ctx),
                       eval_T(_ones(n + 2), [-1] + _ones(n) + [-1], ctx, budget=budget).value)
    if name == "S2_ones":
        return Numeric(_N(cf.cf_S2_ones(n), ctx), eval_S([2] + _ones(2 * n - 1), None, ctx, budget=budget).value)
    if name == "Tbar2_ones_even":
        return Numeric(_N(cf.cf_Tbar2_ones_even(n), ctx),
                       eval_T([2] + _ones(2 * n - 2), [-1] + _ones(2 * n - 2), ctx, budget=budget).value)
    if name == "W2":
        oracle = ctx.mp.mpf(0)
        for i1 in range(1, 2 * n + 1):
            oracle += eval_T([i1, 2 * n + 1 - i1], [-1, 1], ctx, budget=budget).value.real
        return Numeric(_N(cf.cf_W2(n), ctx), oracle)
    raise KeyError(name)


def c_w_oddwt(p, ctx, budget):
    return Exact([cf.cf_W(2 * p) - cf.cf_W_oddwt(p)])


def c_antipode_rel(kind, ell, ctx, budget):
    e = {
        "mi1": lambda: cf.antipode_mi1(ell),
        "pal-1": lambda: cf.antipode_palindrome(ell, -1),
        "pal-i": lambda: cf.antipode_palindrome(ell, I),
        "mm": lambda: cf.antipode_mm(ell),
        "i-1": lambda: cf.antipode_i_minus1(ell),
    }[kind]()
    return Numeric(_N(e, ctx), 0)


def c_doubling(s, t, x, y, ctx, budget):
    return Numeric(_N(cf.gen_doubling_relation(s, t, x, y), ctx), 0)


def c_dup_ii(m, ctx, budget):
    return Numeric(_N(cf.doubling_ii(m), ctx), 0)


def c_doubling_divergent(ctx, budget):
    try:
        cf.gen_doubling_relation(1, 1, 1, 1)
    except DivergentCombination:
        return Count(0)
    return Count(1, "no DivergentCombination for (1,1,1,1)")


def c_weight8_corollary_identity(ctx, budget):
    e = (cf.cf_Sbar2_ones_bar1(3) - cf.weighted_double_sum(3) * 2 + cf.weighted_sum_weight8()
         - cf.fixture_sbar2_bar1_l3())
    return Exact([e])


# ---------------------------------------------------------------------------
# fixtures file

@dataclass(frozen=True)
class Fixture:
    fixture_id: str
    lhs: str
    rhs: str
    anchor: str


@functools.lru_cache(maxsize=None)
def load_fixtures() -> tuple[Fixture, ...]:
    text = resources.files("mvk").joinpath("data/fixtures.txt").read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"malformed fixture line: {line!r}")
        out.append(Fixture(*parts))
    return tuple(out)


def fixture(fixture_id: str) -> Fixture:
    for f in load_fixtures():
        if f.fixture_id == fixture_id:
            return f
    raise KeyError(fixture_id)


def c_fixture(fixture_id, ctx, budget):
    f = fixture(fixture_id)
    return Numeric(_N(parse_expr(f.lhs), ctx), _N(parse_expr(f.rhs), ctx))


# ---------------------------------------------------------------------------
# registry

def _always_fails(ctx, budget):
    return Numeric(1, 0)


DUMMY_FAILURE = Check("dummy/always-fails", _always_fails, "exit-code self test", tol=0.5)


def _p(fn, *args):
    return functools.partial(fn, *args)


@functools.lru_cache(maxsize=None)
def registry() -> tuple[Check, ...]:
    C: list[Check] = []
    add = C.append

    # acceptance criteria ------------------------------------------------------
    for fid in ("examples/S(2,'1)", "examples/T(2,1,'1)", "examples/S(2,1,1,'1)", "examples/T(2,1,1,1,'1)"):
        add(Check(f"acc01/{fid}", _p(c_fixture, fid), fixture(fid).anchor, 1e-8))
    for m in range(1, 4):
        for kind in ("S", "T"):
            add(Check(f"acc02/qn1/{kind}/m={m}", _p(c_qn1_oracle, kind, m), "Question 1 corollary", 1e-6))
    for m in range(1, 6):
        add(Check(f"acc02/qn1/structure/m={m}", _p(c_qn1_structure, m), "Question 1 answer (no log 2 in T)"))
    add(Check("acc03/thm11-series/exact", _p(c_ef_vs_qn1, 12), "E + iF generating series"))
    add(Check("acc03/thm11-series/runtime", _p(c_ef_runtime, 12), "E + iF generating series, runtime <= 10 s", 10))
    for p in range(1, 5):
        add(Check(f"acc04/weighted/p={p}", _p(c_weighted, p), "weighted sum identity with T('1,...)"))
    for p in range(0, 5):
        add(Check(f"acc04/w-odd2/p={p}", _p(c_w_odd2, p), "W(2p+1,2p) via T('1,...) T('2,...)"))
    for name in ("PI_TAN", "GT_BAR1", "C_HALF", "C_QUARTER", "R"):
        add(Check(f"acc04/spot/{name}", _p(c_spot, name), "series spot check at z = 1/10", 1e-10))
    for p in range(1, 7):
        add(Check(f"acc05/cot-half/p={p}", _p(c_cot, p, False), "cotangent moment on [0, pi/2]", 1e-10))
        add(Check(f"acc05/cot-quarter/p={p}", _p(c_cot, p, True), "cotangent moment on [0, pi/4]", 1e-10))
    for r in range(1, 5):
        add(Check(f"acc05/arctan-over-x/r={r}", _p(c_arctan_over_x, r), "arctan^r(x)/x integral", 1e-7))
    for ell in range(1, 4):
        add(Check(f"acc06/thm12/l={ell}", _p(c_thm12, ell), "T('2,{1}_{2l-1},'1) evaluation", 1e-6))
    for ell in range(1, 5):
        add(Check(f"acc06/thm12/structure/l={ell}", _p(c_thm12_structure, ell), "pi/beta(even) ring membership"))
    add(Check("acc07/weight3/T('2,'1)", _p(c_fixture, "weight3/T('2,'1)"), fixture("weight3/T('2,'1)").anchor, 1e-8))
    add(Check("acc07/weight3/closed-form", c_weight3, "weight-3 odd example", 1e-8))
    for ell in range(1, 4):
        add(Check(f"acc08/msvpart1/l={ell}", _p(c_sbar2_1, 2 * ell, "even"), "S('2,{1}_{2l-1},1) corollary", 1e-6))
        add(Check(f"acc08/msvpart2/l={ell}", _p(c_sbar2_bar1, ell, "corollary"), "S('2,{1}_{2l-1},'1) corollary", 1e-6))
    for ell in range(1, 4):
        add(Check(f"acc09/t-double/l={ell}", _p(c_t_double, ell), "t('1,'(2l+1)) evaluation", 1e-7))
    for fid in ("fixtures-weight8/weighted-sum", "fixtures-weight8/l=3", "fixtures-weight10/l=4"):
        add(Check(f"acc10/{fid}", _p(c_fixture, fid), fixture(fid).anchor, 1e-6))
    add(Check("acc11/shuffle-laws", _p(c_shuffle_laws, 11), "shuffle commutativity/associativity"))
    for k in range(30):
        add(Check(f"acc11/antipode/word{k:02d}", _p(c_antipode, 1000 + k), "antipode vanishing", 1e-9))
    for x in (GaussQ(-1), I, -I):
        for y in (GaussQ(-1), I, -I):
            for m in range(1, 5):
                add(Check(f"acc11/stuffle/x={x},y={y},m={m}", _p(c_stuffle_numeric, x, y, m),
                          "stuffle product Li_1 Li_{m+1}", 1e-9))
    for s, t, x, y in ((2, 1, -1, -1), (1, 2, I, I), (2, 2, I, -1), (3, 1, -I, I), (2, 3, -1, I), (1, 3, -I, -I)):
        add(Check(f"acc11/doubling/({s},{t},{GaussQ.coerce(x)},{GaussQ.coerce(y)})",
                  _p(c_doubling, s, t, x, y), "generalised doubling relation", 1e-8))
    for r in range(0, 5):
        add(Check(f"acc11/duality/T(2,{{1}}_{2 * r})", _p(c_duality_T2, r), "T(2,{1}_2r) = T(2r+2)", 1e-9))
    for m in range(0, 3):
        add(Check(f"acc11/duality/T('1,{{1}}_{m},'1)", _p(c_cf_simple, "Tbar1_ones_bar1", m),
                  "T('2,{1}_m) = -(-1)^m T('1,{1}_m,'1)", 1e-9))
    for p in range(0, 6):
        add(Check(f"acc11/distribution/p={p}", _p(c_distribution, p), "level-2 distribution relation", 1e-9))

    # bignum-constants ---------------------------------------------------------
    for name in ("pi", "log2", "zeta3", "beta2"):
        add(Check(f"constants/monotone/{name}", _p(c_const_monotone, name), "64-bit value rounds 256-bit", 2.0 ** -60))
    for name in ("pi", "log2", "zeta3", "zeta5", "beta2", "beta4"):
        add(Check(f"constants/dual/{name}", _p(c_const_dual, name), "two independent algorithms", 1e-70))
    for n in range(1, 7):
        add(Check(f"constants/zeta-even/n={n}", _p(c_zeta_even, n), "Bernoulli formula", 1e-30))
    for k in range(0, 5):
        add(Check(f"constants/beta-odd/k={k}", _p(c_beta_odd, k), "Euler number formula", 1e-30))

    # nested-sums --------------------------------------------------------------
    for k in range(10):
        add(Check(f"nested/oracle-consistency/{k}", _p(c_oracle_consistency, 200 + k), "M = sum of Li", 1e-60))
    add(Check("nested/error-honesty", _p(c_error_honesty, 7), "budget doubling within error estimate"))
    for spec in (([2, 1], [1, -1], "S"), ([2, 1, 1], [1, 1, -1], "T"), ([2, 1, 1, 1], [1, 1, 1, -1], "S")):
        add(Check(f"nested/direct-vs-accelerated/{spec[2]}{tuple(spec[0])}", _p(c_direct_vs_accelerated, spec),
                  "two evaluation routes", 1e-8))

    # word-algebra -------------------------------------------------------------
    add(Check("words/roundtrip", _p(c_roundtrip, 5), "word_to_li o li_to_word = id"))
    for y in (GaussQ(-1), I, -I):
        for m in range(1, 4):
            add(Check(f"words/reg-consistency/y={y},m={m}", _p(c_reg_consistency, y, m),
                      "shuffle and stuffle regularisations agree", 1e-9))
    for k in range(5):
        add(Check(f"words/shuffle-hom/{k}", _p(c_shuffle_hom, 300 + k), "evaluation is a shuffle homomorphism", 1e-9))
    for m in range(1, 4):
        add(Check(f"words/iab-sumreg/m={m}", _p(c_iab_sumreg, m), "binomial telescoping of words"))

    # symbolic-constants -------------------------------------------------------
    add(Check("symbolic/canonicalize", _p(c_canonical, 17), "idempotent and value preserving"))
    add(Check("symbolic/equal-canonical", _p(c_equal_sound, 19), "equal_canonical soundness"))

    # formal-series ------------------------------------------------------------
    add(Check("series/w-system", _p(c_w_system, 12), "W generating-series system"))
    add(Check("series/g-system", _p(c_g_system, 12), "T('2,...) generating-series system"))
    add(Check("series/ef-end-to-end", _p(c_ef_end_to_end, 12), "E + iF solved from the two Q expressions"))
    add(Check("series/q-forms", _p(c_q_forms, 12), "three expressions for Q"))
    add(Check("series/r-forms", _p(c_r_forms, 12), "two expressions for R"))
    add(Check("series/gs21", _p(c_gs21, 12), "S(2,{1}_{2p-1}) generating series"))
    for kind, ns in (("GT_BAR2", range(1, 6)), ("Q1", range(1, 5)), ("R", range(1, 5)),
                     ("C_HALF", range(1, 5)), ("C_QUARTER", range(1, 5)), ("W_CAL", range(1, 5))):
        for n in ns:
            add(Check(f"series/coeff/{kind}/n={n}", _p(c_series_vs_oracle, kind, n), "coefficient vs oracle", 1e-30))

    # closed-forms -------------------------------------------------------------
    for r in range(0, 5):
        add(Check(f"closed/Tbar1_ones/r={r}", _p(c_cf_simple, "Tbar1_ones", r), "T('1,{1}_r)", 1e-30))
    for p in range(1, 4):
        add(Check(f"closed/S2_ones/p={p}", _p(c_cf_simple, "S2_ones", p), "S(2,{1}_{2p-1})", 1e-30))
        add(Check(f"closed/Tbar2_ones_even/p={p}", _p(c_cf_simple, "Tbar2_ones_even", p), "T('2,{1}_{2p-2})", 1e-30))
        add(Check(f"closed/W2/k={p}", _p(c_cf_simple, "W2", p), "W(2k+1,2)", 1e-30))
    for p in range(1, 5):
        add(Check(f"closed/w-oddwt/p={p}", _p(c_w_oddwt, p), "W(2p+1,2p) from W(2j+1,2)"))
    for p in range(1, 5):
        add(Check(f"closed/r/p={p}", _p(c_r, p), "int_0^1 arctan^p", 1e-30))
    for m in (1, 3, 5):
        add(Check(f"closed/Tbar2_bar1-general/m={m}", _p(c_tbar2_bar1_general, m), "general T('2,{1}_{m-1},'1)", 1e-6))
        add(Check(f"closed/Sbar2_bar1-general/m={m}", _p(c_sbar2_bar1_any, m), "general S('2,{1}_{m-1},'1)", 1e-6))
        add(Check(f"closed/Sbar2_1-general/m={m}", _p(c_sbar2_1, m, "general"), "general S('2,{1}_{m-1},1)", 1e-6))
    for ell in range(1, 4):
        for form in ("theorem", "theorem_t", "general"):
            add(Check(f"closed/Sbar2_bar1-{form}/l={ell}", _p(c_sbar2_bar1, ell, form),
                      "S('2,{1}_{2l-1},'1) alternative forms", 1e-6))
        for kind in ("mi1", "pal-1", "pal-i", "mm", "i-1"):
            add(Check(f"closed/antipode/{kind}/l={ell}", _p(c_antipode_rel, kind, ell), "antipode relation", 1e-8))
    for m in range(1, 4):
        add(Check(f"closed/doubling/dup-ii/m={m}", _p(c_dup_ii, m), "doubling at x = y = i", 1e-8))
    add(Check("closed/doubling/divergent-refused", c_doubling_divergent, "divergent doubling arguments"))
    add(Check("closed/fixtures-weight8/corollary-identity", c_weight8_corollary_identity,
              "corollary with quoted W_3 reduction gives the weight-8 fixture"))
    return tuple(C)


def select(filter_text: str | None = None, include_dummy: bool = False) -> list[Check]:
    checks = list(registry())
    if filter_text:
        checks = [c for c in checks if filter_text in c.check_id]
    if include_dummy:
        checks.append(DUMMY_FAILURE)
    return checks


def _run_by_id(check_id: str, prec_bits: int, budget: int, tol: float) -> VerifyRecord:
    checks = {c.check_id: c for c in registry()}
    check = checks.get(check_id, DUMMY_FAILURE if check_id == DUMMY_FAILURE.check_id else None)
    return run_check(check, prec_bits, budget, tol)


def run_checks(checks: Iterable[Check], prec_bits: int = 256, budget: int = DEFAULT_BUDGET,
               tol: float = DEFAULT_TOL, jobs: int = 1) -> list[VerifyRecord]:
    """Run checks (in a process pool when ``jobs > 1``); records keep the input order."""
    checks = list(checks)
    if jobs <= 1 or len(checks) <= 1:
        return [run_check(c, prec_bits, budget, tol) for c in checks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_by_id, c.check_id, prec_bits, budget, tol) for c in checks]
        return [f.result() for f in futures]


def criterion_of(check_id: str) -> int | None:
    if check_id.startswith("acc") and check_id[3:5].isdigit():
        return int(check_id[3:5])
    return None


__all__ = [
    "Check", "VerifyRecord", "Numeric", "Exact", "Count", "PASS", "FAIL", "SKIPPED", "DEFAULT_TOL",
    "registry", "select", "run_check", "run_checks", "criterion_of", "load_fixtures", "fixture",
    "DUMMY_FAILURE", "fmt",
]
