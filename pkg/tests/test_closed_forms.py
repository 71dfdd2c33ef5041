from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from mvk import closed_forms as cf
from mvk import words as W
from mvk.constants import PrecisionContext
from mvk.errors import DivergentCombination, DomainError
from mvk.gaussian import GaussQ
from mvk.nested_sums import eval_S, eval_T, eval_t
from mvk.quadrature import PI_HALF, PI_QUARTER, quad_arctan_over_x, quad_arctan_pow, quad_cot_moment
from mvk.symbolic import (
    BETA,
    LOG2,
    PI,
    beta,
    canonicalize,
    equal_canonical,
    log2,
    mzv,
    num_eval,
    pi,
    zeta,
)

CTX = PrecisionContext(192)
I = GaussQ(0, 1)
F = Fraction


def N(e):
    return num_eval(e, CTX).value


def ones(n):
    return [1] * n


# Question 1 ---------------------------------------------------------------

def test_qn1_examples():
    assert equal_canonical(cf.cf_qn1("T", 1), -6 * beta(4) + zeta(2) * beta(2) * 3)
    assert equal_canonical(cf.cf_qn1("S", 1), zeta(3) * F(7, 2) - pi() * beta(2) - pi(2) * log2() * F(1, 4))
    assert equal_canonical(cf.cf_qn1("T", 2),
                           -10 * beta(6) + zeta(2) * beta(4) * 3 + zeta(4) * beta(2) * F(15, 4))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_qn1_against_nested_sums(m):
    s = eval_S([2] + ones(2 * m - 1), ones(2 * m - 1) + [-1], CTX).value
    t = eval_T([2] + ones(2 * m), ones(2 * m) + [-1], CTX).value
    assert abs(N(cf.cf_qn1("S", m)) - s) < 1e-6
    assert abs(N(cf.cf_qn1("T", m)) - t) < 1e-6


@pytest.mark.parametrize("m", range(1, 6))
def test_qn1_log2_structure(m):
    t = cf.cf_qn1("T", m)
    assert not any(s.kind == LOG2 for s in t.symbols())
    s = cf.cf_qn1("S", m)
    log_terms = {mono: c for mono, c in s.items() if any(sym.kind == LOG2 for sym, _ in mono)}
    assert len(log_terms) == 1
    expected = canonicalize(-log2() * zeta(2 * m) * (2 * (1 - F(1, 4 ** m))))
    assert canonicalize(type(s)(log_terms)) == expected


def test_qn1_domain():
    with pytest.raises(DomainError):
        cf.cf_qn1("S", 0)
    with pytest.raises(DomainError):
        cf.cf_qn1("X", 1)


# simple families ----------------------------------------------------------

def test_tbar1_examples():
    assert cf.cf_Tbar1_ones(0) == -pi() * F(1, 2)
    assert cf.cf_Tbar1_ones(1) == -pi(2) * F(1, 8)
    # duality at m = 1: T('1,1,'1) = T('2,1)
    lhs = eval_T([1, 1, 1], [-1, 1, -1], CTX).value
    assert abs(lhs - eval_T([2, 1], [-1, 1], CTX).value) < 1e-40
    assert abs(N(cf.cf_Tbar1_ones_bar1(1)) - lhs) < 1e-40


def test_t2_and_s2_examples():
    assert cf.cf_T2_ones(0) == pi(2) * F(1, 4)
    assert equal_canonical(cf.cf_T2_ones(2), zeta(4) * (2 * (1 - F(1, 16))))
    t3, t2 = zeta(3) * F(7, 4), pi(2) * F(1, 4)
    assert equal_canonical(cf.cf_S2_ones(1), t3 * 2 - log2() * t2 * 2)
    assert abs(N(cf.cf_S2_ones(1)) - eval_S([2, 1], None, CTX).value) < 1e-40


def test_tbar2_examples():
    assert cf.cf_Tbar2_ones(1) == -2 * beta(2)
    assert abs(N(cf.cf_Tbar2_ones(3)) - eval_T([2, 1, 1], [-1, 1, 1], CTX).value) < 1e-7
    for p in (1, 2, 3):
        assert cf.cf_Tbar2_ones_even(p) == cf.cf_Tbar2_ones(2 * p - 1)


def test_weighted_sums():
    assert cf.cf_W(1) == cf.cf_Tbar2_ones(1)
    for k in (1, 2, 3):
        oracle = sum(eval_T([i, 2 * k + 1 - i], [-1, 1], CTX).value for i in range(1, 2 * k + 1))
        assert abs(N(cf.cf_W2(k)) - oracle) < 1e-40
        assert cf.cf_W(2 * k) == cf.cf_W_oddwt(k)
    assert cf.cf_W_oddwt(1) == cf.cf_W2(1)


# integrals ----------------------------------------------------------------

def test_integral_examples():
    assert cf.cf_cot_moment(1) == pi() * log2() * F(1, 2)
    assert canonicalize(cf.cf_r(1)) == canonicalize(pi() * F(1, 4) - log2() * F(1, 2))
    assert equal_canonical(cf.cf_arctan_over_x(1), beta(2))


@pytest.mark.parametrize("p", range(1, 7))
def test_cot_moments(p):
    assert abs(N(cf.cf_cot_moment(p)) - quad_cot_moment(p, PI_HALF, CTX)) < 1e-10
    assert abs(N(cf.cf_cot_moment(p, quarter=True)) - quad_cot_moment(p, PI_QUARTER, CTX)) < 1e-10


@pytest.mark.parametrize("p", range(1, 5))
def test_r_and_arctan_over_x(p):
    assert abs(N(cf.cf_r(p)) - quad_arctan_pow(p, CTX)) < 1e-30
    assert abs(N(cf.cf_arctan_over_x(p)) - quad_arctan_over_x(p, CTX)) < 1e-30


# T('2,{1}_{m-1},'1) ---------------------------------------------------------

def _tbar2_bar1(m):
    return eval_T([2] + ones(m), [-1] + ones(m - 1) + [-1], CTX).value


def test_weight3_example():
    assert abs(N(cf.cf_Tbar2_bar1_weight3()) - _tbar2_bar1(1)) < 1e-8
    assert abs(N(cf.cf_Tbar2_ones_bar1(1)) - _tbar2_bar1(1)) < 1e-8


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_tbar2_bar1_even(ell):
    assert abs(N(cf.cf_Tbar2_ones_bar1(2 * ell)) - _tbar2_bar1(2 * ell)) < 1e-6


@pytest.mark.parametrize("m", [1, 3, 5])
def test_tbar2_bar1_general_odd(m):
    assert abs(N(cf.cf_Tbar2_ones_bar1(m, "general")) - _tbar2_bar1(m)) < 1e-6


@pytest.mark.parametrize("ell", range(1, 5))
def test_tbar2_bar1_even_ring(ell):
    e = cf.cf_Tbar2_ones_bar1(2 * ell)
    for mono, _ in e.items():
        assert all(s.kind == PI or (s.kind == BETA and s.data % 2 == 0) for s, _ in mono)
        assert sum(s.weight * p for s, p in mono) == 2 * ell + 2


def test_even_and_general_agree():
    assert abs(N(cf.cf_Tbar2_ones_bar1(4, "even")) - N(cf.cf_Tbar2_ones_bar1(4, "general"))) < 1e-40


# S('2,...) ------------------------------------------------------------------

def _zbar1(ell):
    (mono, _), = canonicalize(mzv([2 * ell + 1, 1], [-1, 1])).items()
    return mono


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_sbar2_1(m):
    oracle = eval_S([2] + ones(m), [-1] + ones(m), CTX).value
    assert abs(N(cf.cf_Sbar2_ones_1(m)) - oracle) < 1e-7


@pytest.mark.parametrize("ell", range(1, 5))
def test_sbar2_1_leading_coefficient(ell):
    assert cf.cf_Sbar2_ones_1(2 * ell, "even").coefficient(_zbar1(ell)) == 2


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_t_double(ell):
    oracle = eval_t([1, 2 * ell + 1], [-1, -1], CTX).value
    assert abs(N(cf.cf_t_double(ell)) - oracle) < 1e-7


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("form", ["corollary", "theorem", "theorem_t", "general"])
def test_sbar2_bar1_forms(ell, form):
    oracle = eval_S([2] + ones(2 * ell), [-1] + ones(2 * ell - 1) + [-1], CTX).value
    assert abs(N(cf.cf_Sbar2_ones_bar1(ell, form)) - oracle) < 1e-6


@pytest.mark.parametrize("ell", range(1, 5))
def test_sbar2_bar1_leading_coefficient(ell):
    rest = canonicalize(cf.cf_Sbar2_ones_bar1(ell) - cf.weighted_double_sum(ell) * 2)
    assert rest.coefficient(_zbar1(ell)) == 2 - F(1, 4 ** ell)


@pytest.mark.parametrize("m", [1, 3, 5])
def test_sbar2_bar1_any_odd(m):
    oracle = eval_S([2] + ones(m), [-1] + ones(m - 1) + [-1], CTX).value
    assert abs(N(cf.cf_Sbar2_ones_bar1_any(m)) - oracle) < 1e-6


def test_weighted_double_sum_definition():
    mp = CTX.mp
    # W_1 = sum_{p+q=4} 2^-p zeta('p,q) with zeta('p,q) = sum_{n>m} (-1)^n/(n^p m^q)
    def zbar(p, q):
        return mp.nsum(lambda n: (-1) ** int(n) * mp.zeta(q, 1) / n ** p
                       - (-1) ** int(n) * mp.zeta(q, n) / n ** p, [1, mp.inf]) if q > 1 else \
            mp.nsum(lambda n: (-1) ** int(n) * mp.harmonic(n - 1) / n ** p, [1, mp.inf])
    oracle = sum(zbar(p, 4 - p) / 2 ** p for p in range(1, 4))
    assert abs(N(cf.weighted_double_sum(1)) - oracle) < 1e-20


def test_weight8_references():
    s3 = eval_S([2] + ones(6), [-1] + ones(5) + [-1], CTX).value
    assert abs(N(cf.fixture_sbar2_bar1_l3()) - s3) < 1e-6
    assert canonicalize(cf.cf_Sbar2_ones_bar1(3) - cf.weighted_double_sum(3) * 2
                        + cf.weighted_sum_weight8()) == cf.fixture_sbar2_bar1_l3()
    # the quoted reduction is numerically 2 W_3
    assert abs(N(cf.weighted_sum_weight8()) - 2 * N(cf.weighted_double_sum(3))) < 1e-40


def test_weight10_reference():
    s4 = eval_S([2] + ones(8), [-1] + ones(7) + [-1], CTX).value
    assert abs(N(cf.fixture_sbar2_bar1_l4()) - s4) < 1e-6


# polylogarithm relations --------------------------------------------------

@pytest.mark.parametrize("ell", [1, 2, 3])
def test_antipodes(ell):
    for e in (cf.antipode_mi1(ell), cf.antipode_palindrome(ell, -1), cf.antipode_palindrome(ell, I),
              cf.antipode_mm(ell), cf.antipode_i_minus1(ell)):
        assert abs(N(e)) < 1e-8


def test_doubling_coefficients():
    assert cf.doubling_A(1, 1, 1) == 1
    assert cf.doubling_A(2, 3, 2) == comb(2, 1)
    assert cf.doubling_constant(2, 1) == 2


@pytest.mark.parametrize("s,t,x,y", [(1, 2, I, I), (2, 1, -1, -1), (2, 2, I, -1), (3, 1, -I, I),
                                     (2, 3, -1, I), (1, 3, -I, -I)])
def test_doubling_relations(s, t, x, y):
    assert abs(N(cf.gen_doubling_relation(s, t, x, y))) < 1e-8


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dup_ii(m):
    assert abs(N(cf.doubling_ii(m))) < 1e-8


def test_doubling_refuses_divergent():
    with pytest.raises(DivergentCombination):
        cf.gen_doubling_relation(1, 1, 1, 1)
    with pytest.raises(DivergentCombination):
        cf.gen_doubling_relation(1, 2, -1, I)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_iab_telescoping(m):
    a, b, c, z = GaussQ(1), -I, -I, GaussQ(0)
    total = W.WordCombo()
    for bb in range(m + 1):
        for p in range(m - bb + 1):
            q = m - bb - p
            letters = [b] + [z] * q + [a] + [z] * (bb + p)
            total = total + W.single(W.word(c, letters, 0), (-1) ** bb * comb(bb + p, p))
    assert total == W.single(W.word(c, [b] + [z] * m + [a], 0))
