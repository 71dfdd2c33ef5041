"""Polynomials with Gaussian-rational coefficients in constant symbols.

Symbols are pi, log 2, zeta(k), beta(k), alternating zeta(k bar) and opaque
polylogarithm / mixed values.  :func:`canonicalize` rewrites every reducible
symbol (zeta at even arguments, beta at odd arguments, alternating single
zetas, depth-one polylogarithms at 4th roots of unity) into the basis
{pi, log 2, zeta(odd), beta(even), opaque}.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .constants import (
    PrecisionContext,
    bernoulli,
    beta_int,
    const_log2,
    const_pi,
    euler_number,
    zeta_alt_int,
    zeta_int,
)
from .errors import DomainError
from .gaussian import GaussQ, ONE, ZERO, format_gauss
from .indices import LiIndex, MixedIndex

PI = "pi"
LOG2 = "log2"
ZETA = "zeta"
BETA = "beta"
ZETA_ALT = "zeta_alt"
LI = "li"
MIXED = "mixed"

_KIND_RANK = {PI: 0, LOG2: 1, ZETA: 2, ZETA_ALT: 3, BETA: 4, LI: 5, MIXED: 6}


@dataclass(frozen=True)
class ConstSymbol:
    """A constant: ``kind`` plus its integer or index data."""

    kind: str
    data: object = None
    _key: tuple = field(default=(), compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise DomainError(f"unknown symbol kind {self.kind!r}")
        if self.kind in (ZETA, BETA, ZETA_ALT):
            if not isinstance(self.data, int) or self.data < 1:
                raise DomainError(f"{self.kind} needs a positive integer argument")
            if self.kind == ZETA and self.data < 2:
                raise DomainError("zeta(1) diverges")
        if self.kind == LI and not isinstance(self.data, LiIndex):
            raise DomainError("li symbol needs a LiIndex")
        if self.kind == MIXED and not isinstance(self.data, MixedIndex):
            raise DomainError("mixed symbol needs a MixedIndex")
        object.__setattr__(self, "_key", self._make_key())

    def _make_key(self):
        rank = _KIND_RANK[self.kind]
        if self.kind in (ZETA, BETA, ZETA_ALT):
            return (rank, self.data)
        if self.kind == LI:
            return (rank,) + self.data.sort_key()
        if self.kind == MIXED:
            d = self.data
            return (rank, d.depth, d.exponents, d.signs, d.parities)
        return (rank,)

    @property
    def key(self):
        return self._key

    @property
    def weight(self) -> int:
        if self.kind in (PI, LOG2):
            return 1
        if self.kind in (ZETA, BETA, ZETA_ALT):
            return self.data
        return self.data.weight

    @property
    def opaque(self) -> bool:
        return self.kind in (LI, MIXED)

    def conjugate(self) -> ConstSymbol:
        if self.kind == LI:
            idx = self.data
            return ConstSymbol(LI, LiIndex(idx.exponents, tuple(x.conjugate() for x in idx.args)))
        return self

    @property
    def is_real(self) -> bool:
        if self.kind == LI:
            return all(x.is_real() for x in self.data.args)
        return True

    def render(self) -> str:
        k = self.kind
        if k == PI:
            return "pi"
        if k == LOG2:
            return "l2"
        if k == ZETA:
            return f"z{self.data}"
        if k == BETA:
            return f"b{self.data}"
        if k == ZETA_ALT:
            return f"zeta('{self.data})"
        if k == LI:
            idx = self.data
            if all(x in (ONE, -ONE) for x in idx.args):
                body = ",".join(f"'{s}" if x == -ONE else str(s) for s, x in zip(idx.exponents, idx.args))
                return f"zeta({body})"
            exps = ",".join(str(s) for s in idx.exponents)
            args = ",".join(format_gauss(x) for x in idx.args)
            return f"Li({exps};{args})"
        idx = self.data
        body = ",".join(f"'{s}" if e == -1 else str(s) for s, e in zip(idx.exponents, idx.signs))
        return f"M({','.join(idx.parities)};{body})"

    def __str__(self):
        return self.render()


Monomial = tuple  # tuple of (ConstSymbol, power) sorted by symbol key
_SCALARS = (int, Fraction, float, GaussQ)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers: dict[ConstSymbol, int] = dict(a)
    for s, p in b:
        powers[s] = powers.get(s, 0) + p
    return tuple(sorted(powers.items(), key=lambda sp: sp[0].key))


def _mono_weight(m: Monomial) -> int:
    return sum(s.weight * p for s, p in m)


class SymExpr:
    """Immutable polynomial: a mapping from monomials to GaussQ coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, GaussQ] = {}
        if terms:
            for m, c in terms.items():
                c = GaussQ.coerce(c)
                if c:
                    clean[m] = clean.get(m, ZERO) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def const(cls, c) -> SymExpr:
        return cls({(): c})

    @classmethod
    def symbol(cls, sym: ConstSymbol, power: int = 1) -> SymExpr:
        if power == 0:
            return cls.const(1)
        return cls({((sym, power),): 1})

    @classmethod
    def coerce(cls, x) -> SymExpr:
        return x if isinstance(x, SymExpr) else cls.const(x)

    # mapping-like -------------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, GaussQ]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, mono: Monomial) -> GaussQ:
        return self._terms.get(mono, ZERO)

    def symbols(self) -> set[ConstSymbol]:
        return {s for m in self._terms for s, _ in m}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def constant_term(self) -> GaussQ:
        return self._terms.get((), ZERO)

    def as_monomial(self) -> tuple[GaussQ, Monomial]:
        """Return (c, m) if self is a single term c*m."""
        if len(self._terms) != 1:
            raise DomainError("expression is not a single monomial")
        (m, c), = self._terms.items()
        return c, m

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        other = SymExpr.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SymExpr._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymExpr._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        return self + (-SymExpr.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        return SymExpr.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        if not isinstance(other, SymExpr):
            c = GaussQ.coerce(other)
            if not c:
                return SymExpr()
            return SymExpr._raw({m: v * c for m, v in self._terms.items()})
        out: dict[Monomial, GaussQ] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, ZERO) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return SymExpr._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SymExpr):
            c, m = other.as_monomial()
            if m:
                raise DomainError("division by a non-constant expression")
            other = c
        return self * GaussQ.coerce(other).inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("only non-negative integer powers are supported")
        result = SymExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @classmethod
    def _raw(cls, terms: dict) -> SymExpr:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    def __eq__(self, other):
        if isinstance(other, SymExpr):
            return self._terms == other._terms
        try:
            return self._terms == SymExpr.const(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # structure ----------------------------------------------------------------
    def conjugate(self) -> SymExpr:
        out: dict[Monomial, GaussQ] = {}
        for m, c in self._terms.items():
            mm = tuple(sorted(((s.conjugate(), p) for s, p in m), key=lambda sp: sp[0].key))
            out[mm] = out.get(mm, ZERO) + c.conjugate()
        return SymExpr(out)

    def real_part(self) -> SymExpr:
        return (self + self.conjugate()) * GaussQ(Fraction(1, 2))

    def imag_part(self) -> SymExpr:
        return (self - self.conjugate()) * GaussQ(0, Fraction(-1, 2))

    def weights(self) -> set[int]:
        return {_mono_weight(m) for m in self._terms}

    def map_symbols(self, fn) -> SymExpr:
        """Substitute every symbol ``s`` by the SymExpr ``fn(s)``."""
        out = SymExpr()
        for m, c in self._terms.items():
            term = SymExpr.const(c)
            for s, p in m:
                term = term * (fn(s) ** p)
            out = out + term
        return out

    # presentation -------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, GaussQ]]:
        def key(item):
            m, _ = item
            kinds = [s.kind for s, _ in m]
            if any(k in (LI, MIXED) for k in kinds):
                group = 0
            elif any(k in (ZETA, ZETA_ALT) for k in kinds):
                group = 1
            elif BETA in kinds:
                group = 2
            elif LOG2 in kinds:
                group = 3
            else:
                group = 4
            return (-_mono_weight(m), group, [(s.key, -p) for s, p in m])
        return sorted(self._terms.items(), key=key)

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = [s.render() if p == 1 else f"{s.render()}^{p}" for s, p in m]
            if not factors:
                body = format_gauss(c)
                sign = ""
                if body.startswith("-"):
                    sign, body = "-", body[1:]
                pieces.append((sign, body))
                continue
            mono = "*".join(factors)
            if c == ONE:
                pieces.append(("", mono))
            elif c == -ONE:
                pieces.append(("-", mono))
            else:
                if c.is_real() and c.re < 0:
                    pieces.append(("-", f"{format_gauss(-c)}*{mono}"))
                else:
                    pieces.append(("", f"{format_gauss(c)}*{mono}"))
        out = pieces[0][0] + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" - {body}" if sign == "-" else f" + {body}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SymExpr({self.render()!r})"


# ---------------------------------------------------------------------------
# constructors

def const(c) -> SymExpr:
    return SymExpr.const(c)


def pi(power: int = 1) -> SymExpr:
    return SymExpr.symbol(ConstSymbol(PI), power)


def log2(power: int = 1) -> SymExpr:
    return SymExpr.symbol(ConstSymbol(LOG2), power)


def zeta(k: int) -> SymExpr:
    return SymExpr.symbol(ConstSymbol(ZETA, k))


def beta(k: int) -> SymExpr:
    return SymExpr.symbol(ConstSymbol(BETA, k))


def zeta_alt(k: int) -> SymExpr:
    """Alternating single zeta sum (-1)^n / n^k."""
    return SymExpr.symbol(ConstSymbol(ZETA_ALT, k))


def li_sym(idx: LiIndex) -> SymExpr:
    return SymExpr.symbol(ConstSymbol(LI, idx))


def Li(exponents: Iterable[int], args: Iterable) -> SymExpr:
    return li_sym(LiIndex(tuple(exponents), tuple(GaussQ.coerce(a) for a in args)))


def mzv(exponents: Iterable[int], signs: Iterable[int]) -> SymExpr:
    """Alternating multiple zeta value zeta^sigma(s) = Li_s(sigma)."""
    return Li(exponents, [GaussQ(s) for s in signs])


def mixed_sym(idx: MixedIndex) -> SymExpr:
    return SymExpr.symbol(ConstSymbol(MIXED, idx))


_OPERANDS = _SCALARS + (SymExpr,)

I_UNIT = SymExpr.const(GaussQ(0, 1))


# ---------------------------------------------------------------------------
# canonicalisation

def zeta_even_rational(n: int) -> Fraction:
    """zeta(n) / pi^n for even n >= 2."""
    b = bernoulli(n)
    return (-1) ** (n // 2 + 1) * b * 2 ** n / (2 * math.factorial(n))


def beta_odd_rational(n: int) -> Fraction:
    """beta(n) / pi^n for odd n >= 1."""
    k = (n - 1) // 2
    return Fraction((-1) ** k * euler_number(2 * k), 4 ** (k + 1) * math.factorial(2 * k))


@functools.lru_cache(maxsize=4096)
def _canonical_symbol(sym: ConstSymbol) -> SymExpr:
    k = sym.kind
    if k == ZETA:
        n = sym.data
        if n % 2 == 0:
            return pi(n) * zeta_even_rational(n)
        return SymExpr.symbol(sym)
    if k == BETA:
        n = sym.data
        if n % 2 == 1:
            return pi(n) * beta_odd_rational(n)
        return SymExpr.symbol(sym)
    if k == ZETA_ALT:
        n = sym.data
        if n == 1:
            return -log2()
        return _canonical_symbol(ConstSymbol(ZETA, n)) * (-(1 - Fraction(2) ** (1 - n)))
    if k == LI:
        idx = sym.data
        if idx.depth == 1:
            s, x = idx.exponents[0], idx.args[0]
            if x == ONE:
                return _canonical_symbol(ConstSymbol(ZETA, s))
            if x == -ONE:
                return _canonical_symbol(ConstSymbol(ZETA_ALT, s))
            if x in (GaussQ(0, 1), GaussQ(0, -1)):
                alt = _canonical_symbol(ConstSymbol(ZETA_ALT, s)) * Fraction(1, 2 ** s)
                b = _canonical_symbol(ConstSymbol(BETA, s)) * x
                return alt + b
        return SymExpr.symbol(sym)
    return SymExpr.symbol(sym)


def canonicalize(e: SymExpr) -> SymExpr:
    """Rewrite reducible symbols into the canonical basis; idempotent."""
    return SymExpr.coerce(e).map_symbols(_canonical_symbol)


def equal_canonical(e1, e2) -> bool:
    return canonicalize(SymExpr.coerce(e1)) == canonicalize(SymExpr.coerce(e2))


def is_canonical(e: SymExpr) -> bool:
    return canonicalize(e) == e


# ---------------------------------------------------------------------------
# numerics

@functools.lru_cache(maxsize=4096)
def _symbol_value(sym: ConstSymbol, working_bits: int, guard_bits: int, budget: int):
    from .nested_sums import eval_li, eval_M

    ctx = PrecisionContext(working_bits, guard_bits)
    mp = ctx.mp
    k = sym.kind
    zero = mp.mpf(0)
    if k == PI:
        return mp.mpc(const_pi(ctx)), zero
    if k == LOG2:
        return mp.mpc(const_log2(ctx)), zero
    if k == ZETA:
        return mp.mpc(zeta_int(sym.data, ctx)), zero
    if k == BETA:
        return mp.mpc(beta_int(sym.data, ctx)), zero
    if k == ZETA_ALT:
        return mp.mpc(zeta_alt_int(sym.data, ctx)), zero
    if k == LI:
        rep = eval_li(sym.data, ctx, budget)
        return rep.value, rep.error_estimate
    rep = eval_M(sym.data, ctx, budget)
    return rep.value, rep.error_estimate


@dataclass(frozen=True)
class NumValue:
    value: mpmath.mpc
    error: mpmath.mpf

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag


def num_eval(e, ctx: PrecisionContext | None = None, budget: int = 1 << 20) -> NumValue:
    """Numerical value of an expression with a first-order error bound."""
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    e = SymExpr.coerce(e)
    total = mp.mpc(0)
    err = mp.mpf(0)
    for m, c in e.items():
        term = c.to_mpc(mp)
        rel = mp.mpf(0)
        for s, p in m:
            v, ve = _symbol_value(s, ctx.working_bits, ctx.guard_bits, budget)
            term *= v ** p
            if ve:
                rel += p * ve / abs(v) if v else mp.inf
        total += term
        err += abs(term) * rel
    err += abs(total) * mp.ldexp(1, -ctx.working_bits)
    return NumValue(total, err)


def symbols_of_kind(e: SymExpr, *kinds: str) -> set[ConstSymbol]:
    return {s for s in e.symbols() if s.kind in kinds}


def has_log2(e: SymExpr) -> bool:
    return bool(symbols_of_kind(canonicalize(e), LOG2))


__all__ = [
    "ConstSymbol", "SymExpr", "NumValue", "PI", "LOG2", "ZETA", "BETA", "ZETA_ALT", "LI", "MIXED",
    "const", "pi", "log2", "zeta", "beta", "zeta_alt", "li_sym", "Li", "mzv", "mixed_sym", "I_UNIT",
    "canonicalize", "equal_canonical", "is_canonical", "num_eval", "symbols_of_kind", "has_log2",
    "zeta_even_rational", "beta_odd_rational",
]
