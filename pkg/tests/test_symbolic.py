from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mvk.constants import PrecisionContext
from mvk.gaussian import GaussQ
from mvk.indices import li
from mvk.nested_sums import eval_li, eval_S
from mvk.symbolic import (
    BETA,
    LOG2,
    PI,
    ZETA,
    Li,
    SymExpr,
    beta,
    canonicalize,
    equal_canonical,
    has_log2,
    is_canonical,
    log2,
    mzv,
    num_eval,
    pi,
    symbols_of_kind,
    zeta,
    zeta_alt,
)

CTX = PrecisionContext(128)
I = GaussQ(0, 1)


def test_canonical_examples():
    assert canonicalize(zeta(2)) == pi(2) * Fraction(1, 6)
    assert canonicalize(-zeta_alt(1)) == log2()
    assert canonicalize(zeta(2) * beta(2) * 3) == pi(2) * beta(2) * Fraction(1, 2)
    assert canonicalize(beta(1)) == pi() * Fraction(1, 4)
    assert canonicalize(beta(3)) == pi(3) * Fraction(1, 32)


def test_equal_canonical_examples():
    assert equal_canonical(zeta(4), pi(4) * Fraction(1, 90))
    assert equal_canonical(zeta(2) * (2 * (1 - Fraction(1, 4))), pi(2) * Fraction(1, 4))
    assert not equal_canonical(beta(2), pi(2) * Fraction(1, 8))


def test_canonical_basis_invariants():
    e = canonicalize(zeta(6) * beta(5) + zeta_alt(3) * zeta(3) + Li([2], [-1]) + Li([3], [I]))
    for s in e.symbols():
        if s.kind == ZETA:
            assert s.data % 2 == 1
        if s.kind == BETA:
            assert s.data % 2 == 0
    assert is_canonical(e)


def test_num_eval_examples():
    assert abs(num_eval(pi(2) * Fraction(1, 6), CTX).value - num_eval(zeta(2), CTX).value) < 1e-35
    e = zeta(3) * Fraction(7, 2) - pi() * beta(2) - pi(2) * log2() * Fraction(1, 4)
    assert abs(num_eval(e, CTX).value - eval_S([2, 1], [1, -1], CTX).value) < 1e-8
    assert abs(num_eval(mzv([7, 1], [-1, 1]), CTX).value - eval_li(li([7, 1], [-1, 1]), CTX).value) < 1e-30


def test_zeta_bar_definition():
    # zeta('3,1) = sum_{n>m} (-1)^n / (n^3 m)
    mp = CTX.mp
    oracle = mp.nsum(lambda n: (-1) ** int(n) * mp.harmonic(n - 1) / n ** 3, [1, mp.inf])
    assert abs(num_eval(mzv([3, 1], [-1, 1]), CTX).value - oracle) < 1e-25


def test_arithmetic_and_rendering():
    e = (pi() + log2()) ** 2 - pi(2) - log2(2)
    assert canonicalize(e) == pi() * log2() * 2
    assert str(canonicalize(zeta(3) * Fraction(7, 2) - pi() * beta(2))) == "7/2*z3 - pi*b2"
    assert SymExpr().is_zero()
    assert has_log2(log2() * zeta(3))
    assert not has_log2(-zeta_alt(1) - log2())
    assert symbols_of_kind(pi() * log2(), PI) == {next(iter(pi().symbols()))}


def test_conjugation():
    e = Li([2], [I]) * I
    assert canonicalize(e + e.conjugate()).is_zero() is False
    v = num_eval(e, CTX).value
    assert abs(num_eval(e.conjugate(), CTX).value - v.conjugate()) < 1e-30


ATOMS = [pi(), log2(), zeta(2), zeta(3), zeta(4), zeta(5), beta(1), beta(2), beta(3), beta(4),
         zeta_alt(1), zeta_alt(3), Li([2], [I]), Li([3], [-1]), mzv([3, 1], [-1, 1])]

monomials = st.tuples(
    st.fractions(min_value=-9, max_value=9, max_denominator=9),
    st.lists(st.sampled_from(ATOMS), min_size=1, max_size=3),
)
expressions = st.lists(monomials, min_size=1, max_size=4).map(
    lambda terms: sum((_prod(fs) * c for c, fs in terms), SymExpr())
)


def _prod(factors):
    out = SymExpr.const(1)
    for f in factors:
        out = out * f
    return out


@given(expressions)
def test_canonicalize_idempotent_and_value_preserving(e):
    c = canonicalize(e)
    assert canonicalize(c) == c
    a, b = num_eval(e, CTX), num_eval(c, CTX)
    assert abs(a.value - b.value) <= a.error + b.error + 1e-30


@given(expressions)
def test_equal_canonical_sound(e):
    e2 = canonicalize(e) + pi() - pi()
    assert equal_canonical(e, e2)
    assert abs(num_eval(e, CTX).value - num_eval(e2, CTX).value) < 1e-30
