"""Index types for alternating multiple mixed values and multiple polylogarithms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArgumentNotUnit, DomainError
from .gaussian import FOURTH_ROOTS, GaussQ, ONE

EV = "ev"
OD = "od"
_UNIT_ORDER = {GaussQ(1): 0, GaussQ(-1): 1, GaussQ(0, 1): 2, GaussQ(0, -1): 3}


def _bar(s: int, sign: int) -> str:
    return f"'{s}" if sign == -1 else str(s)


@dataclass(frozen=True)
class MixedIndex:
    """Exponents, signs and parities of an alternating multiple mixed value."""

    exponents: tuple[int, ...]
    signs: tuple[int, ...]
    parities: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(s) for s in self.exponents))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "parities", tuple(self.parities))
        r = len(self.exponents)
        if r == 0 or len(self.signs) != r or len(self.parities) != r:
            raise DomainError("exponents, signs and parities must have equal length >= 1")
        if any(s < 1 for s in self.exponents):
            raise DomainError("exponents must be positive")
        if any(s not in (1, -1) for s in self.signs):
            raise DomainError("signs must be +1 or -1")
        if any(p not in (EV, OD) for p in self.parities):
            raise DomainError("parities must be 'ev' or 'od'")

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def convergent(self) -> bool:
        # Only the outermost factor can make the sum diverge: sum 1/m over a
        # parity class diverges unless the sign twist is non-trivial.
        return not (self.exponents[0] == 1 and self.signs[0] == 1)

    def __str__(self):
        body = ",".join(_bar(s, e) for s, e in zip(self.exponents, self.signs))
        return f"M({','.join(self.parities)};{body})"


def _parities_alternating(r: int, last: str) -> tuple[str, ...]:
    other = EV if last == OD else OD
    return tuple(last if (r - 1 - j) % 2 == 0 else other for j in range(r))


def _signs(exponents: Sequence[int], signs: Sequence[int] | None) -> tuple[int, ...]:
    return tuple(signs) if signs is not None else (1,) * len(exponents)


def T(exponents: Sequence[int], signs: Sequence[int] | None = None) -> MixedIndex:
    """Multiple T value: parities alternate and the innermost one is odd."""
    return MixedIndex(tuple(exponents), _signs(exponents, signs), _parities_alternating(len(exponents), OD))


def S(exponents: Sequence[int], signs: Sequence[int] | None = None) -> MixedIndex:
    """Multiple S value: parities alternate and the innermost one is even."""
    return MixedIndex(tuple(exponents), _signs(exponents, signs), _parities_alternating(len(exponents), EV))


def t_index(exponents: Sequence[int], signs: Sequence[int] | None = None) -> MixedIndex:
    return MixedIndex(tuple(exponents), _signs(exponents, signs), (OD,) * len(exponents))


def zeta_index(exponents: Sequence[int], signs: Sequence[int] | None = None) -> MixedIndex:
    return MixedIndex(tuple(exponents), _signs(exponents, signs), (EV,) * len(exponents))


@dataclass(frozen=True)
class LiIndex:
    """Multiple polylogarithm index Li_{s_1..s_r}(x_1..x_r) with per-slot powers x_j^{m_j}."""

    exponents: tuple[int, ...]
    args: tuple[GaussQ, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(s) for s in self.exponents))
        object.__setattr__(self, "args", tuple(GaussQ.coerce(x) for x in self.args))
        if not self.exponents or len(self.exponents) != len(self.args):
            raise DomainError("exponents and args must have equal length >= 1")
        if any(s < 1 for s in self.exponents):
            raise DomainError("exponents must be positive")
        if len(self.args) > 1:
            for x in self.args:
                if x not in _UNIT_ORDER:
                    raise ArgumentNotUnit(f"argument {x} is not a 4th root of unity")
        elif not self.args[0] or self.args[0].norm() > 1:
            raise DomainError("depth-1 argument must satisfy 0 < |x| <= 1")

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def convergent(self) -> bool:
        return not (self.exponents[0] == 1 and self.args[0] == ONE)

    def sort_key(self):
        return (len(self.exponents), self.exponents,
                tuple(_UNIT_ORDER.get(x, 4) for x in self.args),
                tuple(x.sort_key() for x in self.args))

    def __str__(self):
        exps = ",".join(str(s) for s in self.exponents)
        args = ",".join(str(x) for x in self.args)
        return f"Li({exps};{args})"


def li(exponents: Iterable[int], args: Iterable) -> LiIndex:
    return LiIndex(tuple(exponents), tuple(GaussQ.coerce(x) for x in args))


# factor of a single summation slot written as sum_x c_x x^m
_SLOT_EXPANSION = {
    (EV, 1): ((GaussQ(1), GaussQ(1)), (GaussQ(-1), GaussQ(1))),
    (EV, -1): ((GaussQ(0, 1), GaussQ(1)), (GaussQ(0, -1), GaussQ(1))),
    (OD, 1): ((GaussQ(1), GaussQ(1)), (GaussQ(-1), GaussQ(-1))),
    (OD, -1): ((GaussQ(0, 1), GaussQ(0, 1)), (GaussQ(0, -1), GaussQ(0, -1))),
}


def expand_M_to_li(idx: MixedIndex) -> dict[LiIndex, GaussQ]:
    """Write M as a Q(i)-linear combination of Li at 4th roots of unity.

    Each slot factor (1 + eps (-1)^m) sigma^((2m+1-eps)/4) equals
    sum_x c_x x^m over two 4th roots x, so the product expands into
    2^depth polylogarithms of the same depth.
    """
    combos: dict[tuple[GaussQ, ...], GaussQ] = {(): ONE}
    for parity, sign in zip(idx.parities, idx.signs):
        nxt: dict[tuple[GaussQ, ...], GaussQ] = {}
        for args, coeff in combos.items():
            for x, c in _SLOT_EXPANSION[(parity, sign)]:
                key = args + (x,)
                nxt[key] = nxt.get(key, GaussQ(0)) + coeff * c
        combos = nxt
    return {LiIndex(idx.exponents, args): c for args, c in combos.items() if c}


def unit_roots() -> tuple[GaussQ, ...]:
    return FOURTH_ROOTS


def li_letters(idx: LiIndex) -> tuple[int, tuple[GaussQ, ...]]:
    """Sign and letters of the iterated-integral word of ``idx`` (bounds 1 and 0).

    Li_s(x) = (-1)^r I(1; 0^{s_1-1}, 1/x_1, 0^{s_2-1}, 1/(x_1 x_2), ...; 0).
    """
    letters: list[GaussQ] = []
    prod = ONE
    for s, x in zip(idx.exponents, idx.args):
        prod = prod * x
        letters.extend([GaussQ(0)] * (s - 1))
        letters.append(prod.inverse())
    return (-1) ** idx.depth, tuple(letters)
