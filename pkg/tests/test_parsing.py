from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from mvk.errors import ParseError
from mvk.gaussian import GaussQ
from mvk.parsing import parse_expr, parse_gauss, parse_value
from mvk.symbolic import beta, canonicalize, log2, pi, zeta


def test_value_round_trip():
    v = parse_value("T(2,1,'1)")
    assert v.constructor == "T"
    assert v.exponents == (2, 1, 1)
    assert v.signs == (1, 1, -1)
    assert str(v) == "T(2,1,'1)"


@pytest.mark.parametrize("text", ["S(2,'1)", "t('1,'3)", "zeta('7,1)", "M(ev,od;2,'1)", "Li(3;(1/2+1/2*i))"])
def test_render_is_parse_inverse(text):
    assert str(parse_value(text)) == text


def _render(ctor, args):
    body = ",".join(("'" if bar else "") + str(s) for s, bar in args)
    return f"{ctor}({body})"


values = st.tuples(
    st.sampled_from(["T", "S", "t", "zeta"]),
    st.lists(st.tuples(st.integers(1, 9), st.booleans()), min_size=1, max_size=5),
).map(lambda t: _render(*t))


@given(values)
def test_render_round_trip_property(text):
    assert str(parse_value(text)) == text


def test_expression_parsing():
    e = parse_expr("7/2*z3 - pi*G - 1/4*pi^2*l2")
    assert canonicalize(e) == canonicalize(zeta(3) * 3.5 - pi() * beta(2) - pi(2) * log2() * 0.25)
    assert canonicalize(parse_expr("z2")) == canonicalize(pi(2) / 6)
    assert parse_gauss("(1+i)/2") == GaussQ("1/2", "1/2")


def test_value_inside_expression():
    e = parse_expr("2*S(2,'1) - zeta('3,1)")
    assert len(e.symbols()) == 2


@pytest.mark.parametrize("bad", ["Q(1)", "T(0)", "T(", "S()", "M(xx;2)"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        parse_value(bad)


def test_expression_errors():
    with pytest.raises(ParseError):
        parse_expr("foo(3)")
    with pytest.raises(ParseError):
        parse_gauss("pi")
