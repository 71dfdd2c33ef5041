"""Iterated-integral words: shuffle, stuffle, antipode and regularisation."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .constants import PrecisionContext
from .errors import (
    ArgumentNotUnit,
    BoundMismatch,
    DivergentIndex,
    DomainError,
    MalformedWord,
    NotConvergent,
)
from .gaussian import FOURTH_ROOTS, GaussQ, ONE, ZERO
from .indices import LiIndex, li_letters
from .nested_sums import DEFAULT_BUDGET, EvalReport, eval_word

ALPHABET = (GaussQ(0), GaussQ(1), GaussQ(-1), GaussQ(0, 1), GaussQ(0, -1))
_LETTER_ORDER = {a: k for k, a in enumerate(ALPHABET)}
_LETTER_TEXT = {GaussQ(0): "0", GaussQ(1): "1", GaussQ(-1): "-1", GaussQ(0, 1): "i", GaussQ(0, -1): "-i"}


def _letter(x) -> GaussQ:
    a = GaussQ.coerce(x)
    if a not in _LETTER_ORDER:
        raise DomainError(f"letter {a} is outside the alphabet {{0, +-1, +-i}}")
    return a


@dataclass(frozen=True)
class IIWord:
    """The iterated integral I(upper; letters; lower)."""

    upper: GaussQ
    letters: tuple[GaussQ, ...]
    lower: GaussQ = ZERO

    def __post_init__(self):
        object.__setattr__(self, "upper", GaussQ.coerce(self.upper))
        object.__setattr__(self, "lower", GaussQ.coerce(self.lower))
        object.__setattr__(self, "letters", tuple(_letter(a) for a in self.letters))

    @property
    def bounds(self) -> tuple[GaussQ, GaussQ]:
        return self.upper, self.lower

    @property
    def convergent(self) -> bool:
        if not self.letters:
            return True
        return self.letters[0] != self.upper and self.letters[-1] != self.lower

    def __len__(self):
        return len(self.letters)

    def with_letters(self, letters: Iterable[GaussQ]) -> IIWord:
        return IIWord(self.upper, tuple(letters), self.lower)

    def sort_key(self):
        return (len(self.letters), tuple(_LETTER_ORDER[a] for a in self.letters))

    def __str__(self):
        body = ",".join(_LETTER_TEXT[a] for a in self.letters)
        return f"I({_bound_text(self.upper)}; {body}; {_bound_text(self.lower)})"


def _bound_text(b: GaussQ) -> str:
    return _LETTER_TEXT.get(b, str(b))


def word(upper, letters: Iterable, lower=0) -> IIWord:
    return IIWord(GaussQ.coerce(upper), tuple(GaussQ.coerce(a) for a in letters), GaussQ.coerce(lower))


class WordCombo(Mapping):
    """Finite Q(i)-linear combination of words sharing the same bounds."""

    __slots__ = ("_terms", "_bounds")

    def __init__(self, terms: Mapping[IIWord, object] | None = None, bounds=None):
        self._terms: dict[IIWord, GaussQ] = {}
        self._bounds = bounds
        if terms:
            for w, c in terms.items():
                self._add(w, GaussQ.coerce(c))

    def _add(self, w: IIWord, c: GaussQ):
        if self._bounds is None:
            self._bounds = w.bounds
        elif w.bounds != self._bounds:
            raise BoundMismatch(f"{w} does not have bounds {self._bounds}")
        total = self._terms.get(w, ZERO) + c
        if total:
            self._terms[w] = total
        else:
            self._terms.pop(w, None)

    @property
    def bounds(self):
        return self._bounds

    def __getitem__(self, w):
        return self._terms[w]

    def __iter__(self) -> Iterator[IIWord]:
        return iter(sorted(self._terms, key=IIWord.sort_key))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, WordCombo):
            return self._terms == other._terms
        return NotImplemented

    def __add__(self, other: WordCombo) -> WordCombo:
        out = WordCombo(self._terms, self._bounds)
        for w, c in other._terms.items():
            out._add(w, c)
        return out

    def __sub__(self, other: WordCombo) -> WordCombo:
        return self + other.scale(-1)

    def scale(self, k) -> WordCombo:
        k = GaussQ.coerce(k)
        return WordCombo({w: c * k for w, c in self._terms.items()}, self._bounds)

    def __mul__(self, other: WordCombo) -> WordCombo:
        out = WordCombo(bounds=self._bounds)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                for w, c in shuffle(w1, w2).items():
                    out._add(w, c * c1 * c2)
        return out

    def total_coefficient(self) -> GaussQ:
        return sum(self._terms.values(), ZERO)

    def __repr__(self):
        return " + ".join(f"{c}*{w}" for w, c in self.items()) or "0"


def single(w: IIWord, coeff=1) -> WordCombo:
    return WordCombo({w: coeff})


# ---------------------------------------------------------------------------
# shuffle product

@functools.lru_cache(maxsize=65536)
def _shuffle_letters(u: tuple, v: tuple) -> tuple[tuple[tuple, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[tuple, int] = {}
    for rest, c in _shuffle_letters(u[1:], v):
        key = (u[0],) + rest
        out[key] = out.get(key, 0) + c
    for rest, c in _shuffle_letters(u, v[1:]):
        key = (v[0],) + rest
        out[key] = out.get(key, 0) + c
    return tuple(out.items())


def shuffle(w1: IIWord, w2: IIWord) -> WordCombo:
    """Shuffle product of two words with equal bounds."""
    if w1.bounds != w2.bounds:
        raise BoundMismatch(f"cannot shuffle {w1} with {w2}")
    return WordCombo({w1.with_letters(letters): c
                      for letters, c in _shuffle_letters(w1.letters, w2.letters)}, w1.bounds)


# ---------------------------------------------------------------------------
# antipode

@dataclass(frozen=True)
class ProductTerm:
    """coeff * I(left) * I(right)."""

    coeff: int
    left: IIWord
    right: IIWord


def antipode_terms(w: IIWord) -> list[ProductTerm]:
    """Terms of sum_i (-1)^i I(a_1..a_i) I(a_n..a_{i+1}), an expression equal to 0."""
    n = len(w)
    letters = w.letters
    return [ProductTerm((-1) ** i, w.with_letters(letters[:i]), w.with_letters(letters[i:][::-1]))
            for i in range(n + 1)]


def antipode_combo(w: IIWord) -> WordCombo:
    """The antipode expression expanded through the shuffle product.

    For a non-empty word this is the zero combination, which is exactly the
    statement that the alternating sum vanishes identically.
    """
    out = WordCombo(bounds=w.bounds)
    for term in antipode_terms(w):
        out = out + shuffle(term.left, term.right).scale(term.coeff)
    return out


# ---------------------------------------------------------------------------
# regularisation

@functools.lru_cache(maxsize=65536)
def _reg_letters(letters: tuple, upper: GaussQ, lower: GaussQ) -> tuple[tuple[tuple, Fraction], ...]:
    n = len(letters)
    if n == 0:
        return (((), Fraction(1)),)
    a = 0
    while a < n and letters[a] == upper:
        a += 1
    out: dict[tuple, Fraction] = {}

    def add(items, scale):
        for key, c in items:
            out[key] = out.get(key, Fraction(0)) + c * scale

    if a:
        # 1 sh (1^{a-1} u) = a 1^a u + sum_j 1^{a-1} u_{<=j} 1 u_{>j}; reg(1) = 0
        if a == n:
            return ()
        head, u = letters[:a - 1], letters[a:]
        for j in range(1, len(u) + 1):
            add(_reg_letters(head + u[:j] + (upper,) + u[j:], upper, lower), Fraction(-1, a))
        return tuple((k, c) for k, c in out.items() if c)
    b = 0
    while b < n and letters[n - 1 - b] == lower:
        b += 1
    if b:
        if b == n:
            return ()
        v, tail = letters[:n - b], letters[n - b + 1:]
        for j in range(len(v)):
            add(_reg_letters(v[:j] + (lower,) + v[j:] + tail, upper, lower), Fraction(-1, b))
        return tuple((k, c) for k, c in out.items() if c)
    return ((letters, Fraction(1)),)


def reg_shuffle(w: IIWord) -> WordCombo:
    """Shuffle-regularise a word into convergent words (convention log 0 := 0)."""
    return WordCombo({w.with_letters(k): c for k, c in _reg_letters(w.letters, w.upper, w.lower)},
                     w.bounds)


def reg_shuffle_combo(combo: WordCombo) -> WordCombo:
    out = WordCombo(bounds=combo.bounds)
    for w, c in combo.items():
        out = out + reg_shuffle(w).scale(c)
    return out


# ---------------------------------------------------------------------------
# Li <-> word

def li_to_word(idx: LiIndex) -> tuple[int, IIWord]:
    """Li_s(x) = sign * I(1; 0^{s_1-1}, 1/x_1, ...; 0)."""
    if any(x not in FOURTH_ROOTS for x in idx.args):
        raise ArgumentNotUnit(f"{idx}: word letters need arguments in {{+-1, +-i}}")
    sign, letters = li_letters(idx)
    return sign, IIWord(ONE, letters, ZERO)


def word_to_li(w: IIWord) -> tuple[int, LiIndex]:
    """Inverse of :func:`li_to_word` for convergent words with bounds (1, 0)."""
    if w.bounds != (ONE, ZERO):
        w = normalize_bounds(w)
    if not w.letters:
        raise MalformedWord("the empty word is not a polylogarithm")
    if w.letters[-1] == ZERO:
        raise MalformedWord(f"{w} ends with 0")
    if w.letters[0] == ONE:
        raise NotConvergent(f"{w} starts with the upper bound")
    exponents = []
    args = []
    run = 0
    prev = ONE
    for a in w.letters:
        run += 1
        if a:
            exponents.append(run)
            args.append(prev / a)
            prev = a
            run = 0
    return (-1) ** len(exponents), LiIndex(tuple(exponents), tuple(args))


def normalize_bounds(w: IIWord) -> IIWord:
    """Affine invariance: I(C; w; 0) = I(1; w/C; 0)."""
    if w.lower != ZERO:
        raise DomainError("only words with lower bound 0 can be normalised")
    if not w.upper:
        raise DomainError("upper bound must be non-zero")
    if w.upper == ONE:
        return w
    inv = w.upper.inverse()
    return IIWord(ONE, tuple(a * inv for a in w.letters), ZERO)


def normalize_combo(combo: WordCombo) -> WordCombo:
    out = WordCombo()
    for w, c in combo.items():
        out = out + single(normalize_bounds(w), c)
    return out


def combo_to_li(combo: WordCombo) -> dict[LiIndex, GaussQ]:
    """Regularise, normalise and convert every word to a signed Li index.

    The empty word contributes under the key ``None`` (the constant 1).
    """
    out: dict = {}
    for w, c in reg_shuffle_combo(normalize_combo(combo)).items():
        if not w.letters:
            key, coeff = None, c
        else:
            sign, key = word_to_li(w)
            coeff = c * sign
        out[key] = out.get(key, ZERO) + coeff
        if not out[key]:
            del out[key]
    return out


# ---------------------------------------------------------------------------
# stuffle product on Li indices

@functools.lru_cache(maxsize=65536)
def _stuffle_letters(u: tuple, v: tuple) -> tuple[tuple[tuple, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[tuple, int] = {}

    def add(head, items):
        for rest, c in items:
            key = (head,) + rest
            out[key] = out.get(key, 0) + c

    add(u[0], _stuffle_letters(u[1:], v))
    add(v[0], _stuffle_letters(u, v[1:]))
    merged = (u[0][0] + v[0][0], u[0][1] * v[0][1])
    add(merged, _stuffle_letters(u[1:], v[1:]))
    return tuple(out.items())


def _li_pairs(idx: LiIndex) -> tuple:
    return tuple(zip(idx.exponents, idx.args))


def _from_pairs(pairs: tuple) -> LiIndex:
    return LiIndex(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def stuffle(idx1: LiIndex, idx2: LiIndex) -> dict[LiIndex, int]:
    """Quasi-shuffle product: Li(idx1) Li(idx2) as a sum of Li indices."""
    return {_from_pairs(k): c for k, c in _stuffle_letters(_li_pairs(idx1), _li_pairs(idx2))}


@functools.lru_cache(maxsize=4096)
def _stuffle_reg_pairs(pairs: tuple) -> tuple[tuple[tuple, Fraction], ...]:
    one = (1, ONE)
    a = 0
    while a < len(pairs) and pairs[a] == one:
        a += 1
    if a == 0:
        return ((pairs, Fraction(1)),)
    if a == len(pairs):
        return ()
    out: dict[tuple, Fraction] = {}
    for key, c in _stuffle_letters((one,), pairs[1:]):
        if key == pairs:
            if c != a:
                raise AssertionError("unexpected stuffle multiplicity")
            continue
        for k2, c2 in _stuffle_reg_pairs(key):
            out[k2] = out.get(k2, Fraction(0)) - Fraction(c * c2, a)
    return tuple((k, c) for k, c in out.items() if c)


def stuffle_regularize(idx: LiIndex) -> dict[LiIndex, Fraction]:
    """Stuffle regularisation with Li_1(1) := 0; convergent indices map to themselves."""
    return {_from_pairs(k): c for k, c in _stuffle_reg_pairs(_li_pairs(idx))}


# ---------------------------------------------------------------------------
# numerics

def eval_iiword(w: IIWord, ctx: PrecisionContext | None = None, budget: int = DEFAULT_BUDGET) -> EvalReport:
    """Numerical value of a word; divergent words are shuffle-regularised first."""
    ctx = ctx or PrecisionContext()
    return eval_combo(single(w), ctx, budget)


def eval_combo(combo: WordCombo, ctx: PrecisionContext | None = None, budget: int = DEFAULT_BUDGET) -> EvalReport:
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    total = mp.mpc(0)
    err = mp.mpf(0)
    terms = 0
    for w, c in reg_shuffle_combo(normalize_combo(combo)).items():
        cc = c.to_mpc(mp)
        if not w.letters:
            total += cc
            continue
        if not w.convergent:
            raise DivergentIndex(f"{w} is still divergent after regularisation")
        rep = eval_word(w.letters, ctx, budget)
        total += cc * rep.value
        err += abs(cc) * rep.error_estimate
        terms = max(terms, rep.terms_used)
    return EvalReport(total, err, terms, "accelerated")


def eval_product_terms(terms: Iterable[ProductTerm], ctx: PrecisionContext | None = None,
                       budget: int = DEFAULT_BUDGET) -> EvalReport:
    """Evaluate sum coeff * I(left) * I(right) with each factor regularised separately."""
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    total = mp.mpc(0)
    err = mp.mpf(0)
    for t in terms:
        left = eval_iiword(t.left, ctx, budget)
        right = eval_iiword(t.right, ctx, budget)
        total += t.coeff * left.value * right.value
        err += abs(left.value) * right.error_estimate + abs(right.value) * left.error_estimate
    return EvalReport(total, err, 0, "accelerated")


def parse_word(text: str) -> IIWord:
    """Parse ``I(1; -1,0,0,1; 0)``."""
    from .parsing import parse_gauss

    s = text.strip()
    if not (s.startswith("I(") and s.endswith(")")):
        raise DomainError(f"not a word: {text!r}")
    parts = s[2:-1].split(";")
    if len(parts) != 3:
        raise DomainError(f"a word needs three ';'-separated parts: {text!r}")
    upper = parse_gauss(parts[0])
    body = parts[1].strip()
    letters = [parse_gauss(x) for x in body.split(",")] if body else []
    return word(upper, letters, parse_gauss(parts[2]))
