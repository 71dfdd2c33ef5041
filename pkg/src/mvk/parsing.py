"""Text syntax for values, words and symbolic expressions.

Values use a leading apostrophe for a barred argument (sign -1)::

    T(2,1,'1)   S(2,'1)   t('1)   zeta('7,1)   M(od,ev;2,'1)   Li(2,1;-1,i)

Expressions are sums of products of numbers and constants, e.g.
``7/2*z3 - pi*b2 - 1/4*pi^2*l2``; ``zN``/``bN`` denote zeta(N)/beta(N) and
any value above may appear as a factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError
from .gaussian import GaussQ
from .indices import EV, OD, LiIndex, MixedIndex, S, T, li, t_index, zeta_index
from .symbolic import (
    SymExpr,
    beta,
    canonicalize,
    li_sym,
    log2,
    mixed_sym,
    mzv,
    pi,
    zeta,
    zeta_alt,
)

CONSTRUCTORS = ("T", "S", "t", "zeta", "M", "Li")


@dataclass(frozen=True)
class ValueSpec:
    """A parsed value such as ``T(2,1,'1)``."""

    constructor: str
    exponents: tuple[int, ...]
    signs: tuple[int, ...] = ()
    parities: tuple[str, ...] = ()
    args: tuple[GaussQ, ...] = ()

    def index(self):
        c = self.constructor
        if c == "T":
            return T(self.exponents, self.signs)
        if c == "S":
            return S(self.exponents, self.signs)
        if c == "t":
            return t_index(self.exponents, self.signs)
        if c == "zeta":
            return zeta_index(self.exponents, self.signs)
        if c == "M":
            return MixedIndex(self.exponents, self.signs, self.parities)
        return li(self.exponents, self.args)

    def render(self) -> str:
        if self.constructor == "Li":
            from .gaussian import format_gauss

            return (f"Li({','.join(map(str, self.exponents))};"
                    f"{','.join(format_gauss(a) for a in self.args)})")
        body = ",".join(f"'{s}" if e == -1 else str(s) for s, e in zip(self.exponents, self.signs))
        if self.constructor == "M":
            return f"M({','.join(self.parities)};{body})"
        return f"{self.constructor}({body})"

    def __str__(self):
        return self.render()

    def evaluate(self, ctx=None, budget=None, method="accelerated"):
        from .nested_sums import DEFAULT_BUDGET, eval_li, eval_M, eval_t, eval_zeta

        budget = budget or DEFAULT_BUDGET
        c = self.constructor
        if c == "Li":
            return eval_li(self.index(), ctx, budget, method)
        if c == "t":
            return eval_t(self.exponents, self.signs, ctx, budget=budget, method=method)
        if c == "zeta":
            return eval_zeta(self.exponents, self.signs, ctx, budget=budget, method=method)
        return eval_M(self.index(), ctx, budget, method)

    def to_symexpr(self) -> SymExpr:
        c = self.constructor
        if c == "Li":
            return li_sym(self.index())
        if c == "zeta":
            if len(self.exponents) == 1:
                s, e = self.exponents[0], self.signs[0]
                return zeta(s) if e == 1 else zeta_alt(s)
            return mzv(self.exponents, self.signs)
        expr = mixed_sym(self.index())
        if c == "t":
            expr = expr * Fraction(1, 2 ** len(self.exponents))
        return expr


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_barred(items: list[str]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    exps, signs = [], []
    for item in items:
        item = item.strip()
        sign = 1
        if item.startswith("'"):
            sign, item = -1, item[1:].strip()
        if item.endswith("̄"):  # combining macron
            sign, item = -1, item[:-1]
        if not item.isdigit():
            raise ParseError(f"bad exponent {item!r}")
        exps.append(int(item))
        signs.append(sign)
    return tuple(exps), tuple(signs)


_VALUE_RE = re.compile(r"^\s*(T|S|t|zeta|M|Li)\s*\((.*)\)\s*$", re.S)


def _parse_value(text: str) -> ValueSpec:
    m = _VALUE_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse value {text!r}")
    ctor, body = m.group(1), m.group(2)
    if ctor == "M":
        parts = _split_top(body, ";")
        if len(parts) != 2:
            raise ParseError("M(...) needs 'parities;exponents'")
        parities = tuple(p.strip() for p in parts[0].split(","))
        if any(p not in (EV, OD) for p in parities):
            raise ParseError(f"bad parity list {parts[0]!r}")
        exps, signs = _parse_barred(parts[1].split(","))
        return ValueSpec("M", exps, signs, parities)
    if ctor == "Li":
        parts = _split_top(body, ";")
        if len(parts) != 2:
            raise ParseError("Li(...) needs 'exponents;arguments'")
        exps = tuple(int(x) for x in parts[0].split(","))
        args = tuple(parse_gauss(x) for x in _split_top(parts[1], ","))
        return ValueSpec("Li", exps, (), (), args)
    exps, signs = _parse_barred(_split_top(body, ","))
    return ValueSpec(ctor, exps, signs)


def parse_value(text: str) -> ValueSpec:
    """Parse ``T(2,1,'1)``-style text; the index is validated on the way."""
    spec = _parse_value(text)
    try:
        spec.index()
    except DomainError as exc:
        raise ParseError(f"{text!r}: {exc}") from None
    return spec


# ---------------------------------------------------------------------------
# expression parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m or m.end() == self.pos and self.pos >= len(self.text):
            return None
        tok = m.group(1) or m.group(2) or m.group(3)
        return tok

    def next(self) -> str:
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m or m.group(0).strip() == "":
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.pos = m.end()
        return m.group(1) or m.group(2) or m.group(3)

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r} in {self.text!r}")

    def at_end(self) -> bool:
        return self.text[self.pos:].strip() == ""

    def parse(self) -> SymExpr:
        e = self.expr()
        if not self.at_end():
            raise ParseError(f"trailing input {self.text[self.pos:]!r}")
        return e

    def expr(self) -> SymExpr:
        if self.peek() in ("+", "-"):
            sign = self.next()
            e = self.term()
            if sign == "-":
                e = -e
        else:
            e = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> SymExpr:
        e = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            e = e * rhs if op == "*" else e / rhs
        return e

    def unary(self) -> SymExpr:
        if self.peek() == "-":
            self.next()
            return -self.unary()
        if self.peek() == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> SymExpr:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            n = int(self.next())
            if neg:
                raise ParseError("negative powers are not supported")
            return base ** n
        return base

    def _call_body(self) -> str:
        # raw text between matching parentheses (the '(' already consumed)
        depth = 1
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    body = self.text[start:self.pos]
                    self.pos += 1
                    return body
            self.pos += 1
        raise ParseError(f"unbalanced parentheses in {self.text!r}")

    def atom(self) -> SymExpr:
        tok = self.next()
        if tok == "(":
            e = self.expr()
            self.expect(")")
            return e
        if re.fullmatch(r"\d+", tok):
            return SymExpr.const(int(tok))
        if re.fullmatch(r"\d+\.\d+", tok):
            return SymExpr.const(Fraction(tok))
        if tok == "pi":
            return pi()
        if tok in ("l2", "log2"):
            return log2()
        if tok == "i":
            return SymExpr.const(GaussQ(0, 1))
        if tok == "G":
            return beta(2)
        m = re.fullmatch(r"z(\d+)", tok)
        if m:
            return zeta(int(m.group(1)))
        m = re.fullmatch(r"b(\d+)", tok)
        if m:
            return beta(int(m.group(1)))
        if self.peek() == "(":
            self.next()
            body = self._call_body()
            return self.call(tok, body)
        raise ParseError(f"unknown token {tok!r} in {self.text!r}")

    def call(self, name: str, body: str) -> SymExpr:
        if name in ("Re", "Im"):
            inner = _Parser(body).parse()
            return inner.real_part() if name == "Re" else inner.imag_part()
        if name == "log" and body.strip() == "2":
            return log2()
        if name == "beta":
            return beta(int(body))
        if name in CONSTRUCTORS:
            return parse_value(f"{name}({body})").to_symexpr()
        raise ParseError(f"unknown function {name!r}")


def parse_expr(text: str) -> SymExpr:
    """Parse an expression into a (not yet canonical) SymExpr."""
    return _Parser(text).parse()


def parse_gauss(text: str) -> GaussQ:
    e = canonicalize(parse_expr(text))
    if e.is_zero():
        return GaussQ(0)
    c, m = e.as_monomial()
    if m:
        raise ParseError(f"{text!r} is not a Gaussian rational")
    return c
