from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mvk.constants import PrecisionContext
from mvk.errors import ArgumentNotUnit, BoundMismatch, MalformedWord, NotConvergent
from mvk.gaussian import GaussQ
from mvk.indices import li
from mvk.nested_sums import eval_li
from mvk import words as W

I = GaussQ(0, 1)
LETTERS = [GaussQ(0), GaussQ(1), GaussQ(-1), I, -I]
CTX = PrecisionContext(128)


def words(max_len=4):
    return st.lists(st.sampled_from(LETTERS), min_size=0, max_size=max_len).map(lambda ls: W.word(1, ls, 0))


def convergent_words(max_len=6):
    return (st.lists(st.sampled_from(LETTERS), min_size=1, max_size=max_len)
            .map(lambda ls: W.word(1, ls, 0))
            .filter(lambda w: w.convergent and sum(1 for x in w.letters if x) <= 3))


def test_shuffle_examples():
    w = W.parse_word("I(1; -1,0,0,1; 0)")
    assert W.shuffle(W.word(1, [], 0), w) == W.single(w)
    assert W.shuffle(W.word(1, [0], 0), W.word(1, [1], 0)) == (
        W.single(W.word(1, [0, 1], 0)) + W.single(W.word(1, [1, 0], 0)))
    assert W.shuffle(W.word(1, [0, 1], 0), W.word(1, [1, 0, -1], 0)).total_coefficient() == 10


def test_shuffle_bound_mismatch():
    with pytest.raises(BoundMismatch):
        W.shuffle(W.word(1, [0], 0), W.word(-1, [1], 0))


@given(words(), words())
def test_shuffle_commutative(u, v):
    assert W.shuffle(u, v) == W.shuffle(v, u)


@given(words(3), words(3), words(3))
def test_shuffle_associative(u, v, w):
    assert W.single(u) * W.shuffle(v, w) == W.shuffle(u, v) * W.single(w)


@given(words(), words())
def test_shuffle_total_coefficient(u, v):
    from math import comb

    assert W.shuffle(u, v).total_coefficient() == comb(len(u) + len(v), len(u))


@given(convergent_words())
def test_antipode_vanishes(w):
    assert abs(W.eval_combo(W.antipode_combo(w), CTX).value) < 1e-9


def test_antipode_palindromic_example():
    # 2 Li_{1,3}(-1,1) + sum_r (-1)^r Li_r(-1) Li_{4-r}(-1) = 0
    total = 2 * eval_li(li([1, 3], [-1, 1]), CTX).value
    for r in range(1, 4):
        total += (-1) ** r * eval_li(li([r], [-1]), CTX).value * eval_li(li([4 - r], [-1]), CTX).value
    assert abs(total) < 1e-9


def test_li_to_word_examples():
    assert W.li_to_word(li([2], [1])) == (-1, W.word(1, [0, 1], 0))
    assert W.li_to_word(li([1, 3], [I, 1])) == (1, W.word(1, [-I, 0, 0, -I], 0))
    assert W.li_to_word(li([1, 3], [-1, -1])) == (1, W.word(1, [-1, 0, 0, 1], 0))
    with pytest.raises(ArgumentNotUnit):
        W.li_to_word(li([3], [GaussQ(Fraction(1, 2), Fraction(1, 2))]))


def test_word_to_li_errors():
    with pytest.raises(MalformedWord):
        W.word_to_li(W.word(1, [1, 0], 0))
    with pytest.raises(NotConvergent):
        W.word_to_li(W.word(1, [1], 0))


lis = st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.lists(st.integers(1, 8 // r), min_size=r, max_size=r),
    st.lists(st.sampled_from([GaussQ(1), GaussQ(-1), I, -I]), min_size=r, max_size=r),
)).map(lambda t: li(*t)).filter(lambda idx: idx.convergent)


@given(lis)
def test_round_trip(idx):
    sign, w = W.li_to_word(idx)
    sign2, back = W.word_to_li(w)
    assert back == idx and sign * sign2 == 1


@given(convergent_words(4), convergent_words(4))
def test_shuffle_homomorphism(u, v):
    lhs = W.eval_combo(W.shuffle(u, v), CTX).value
    rhs = W.eval_iiword(u, CTX).value * W.eval_iiword(v, CTX).value
    assert abs(lhs - rhs) < 1e-9


def test_word_value_matches_li():
    sign, w = W.li_to_word(li([2, 1], [-1, I]))
    assert abs(sign * W.eval_iiword(w, CTX).value - eval_li(li([2, 1], [-1, I]), CTX).value) < 1e-30


def test_reg_shuffle_basic():
    w = W.word(1, [0, -1], 0)
    assert W.reg_shuffle(w) == W.single(w)
    assert len(W.reg_shuffle(W.word(1, [1], 0))) == 0


@pytest.mark.parametrize("y", [GaussQ(-1), I, -I])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_regularisations_agree(y, m):
    idx = li([1, m + 1], [1, y])
    sign, w = W.li_to_word(idx)
    shuffle_val = sign * W.eval_combo(W.reg_shuffle(w), CTX).value
    stuffle_val = sum(CTX.mp.mpf(c.numerator) / c.denominator * eval_li(k, CTX).value
                      for k, c in W.stuffle_regularize(idx).items())
    assert abs(shuffle_val - stuffle_val) < 1e-9


def test_reg_example_m2():
    # Li_{1,3}(1,-1) regularised: Li_1(1) Li_3(-1) - Li_{3,1}(-1,1) - Li_4(-1) with Li_1(1) := 0
    idx = li([1, 3], [1, -1])
    sign, w = W.li_to_word(idx)
    value = sign * W.eval_combo(W.reg_shuffle(w), CTX).value
    expected = -eval_li(li([3, 1], [-1, 1]), CTX).value - eval_li(li([4], [-1]), CTX).value
    assert abs(value - expected) < 1e-9


def test_stuffle_depth_one():
    got = W.stuffle(li([2], [-1]), li([3], [I]))
    assert got == {li([2, 3], [-1, I]): 1, li([3, 2], [I, -1]): 1, li([5], [-I]): 1}


@given(lis, lis)
def test_stuffle_commutative(a, b):
    assert W.stuffle(a, b) == W.stuffle(b, a)


def test_parse_word_round_trip():
    w = W.parse_word("I(1; -1,0,i,-i; 0)")
    assert W.parse_word(str(w)) == w
