"""Normal forms for the three acting groups.

* ``FreeWord``   reduced words in the free group on ``g_1 .. g_n``; a letter ``i``
  stands for ``g_i`` and ``-i`` for ``g_i^-1``.
* ``NAdicElem``  ``(r, k)`` in ``Q_n x| Z`` with ``(s, j)(r, k) = (r/n^j + s, j + k)``.
* ``AffineElem`` ``(u, w)`` in ``Q x| Q^x`` with ``(u, w)(u', w') = (u + u'w, ww')``;
  ``positive=True`` marks the subgroup with ``w > 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import GroupMismatch, InvalidElement


def n_power_exponent(q: Fraction, n: int) -> Optional[int]:
    """Least ``e >= 0`` with ``q * n^e`` an integer, or None if none exists."""
    den = q.denominator
    e = 0
    while den != 1:
        g = math.gcd(den, n)
        if g == 1:
            return None
        den //= g
        e += 1
    # den | n^e now, but a smaller exponent might already do
    while e > 0 and (q * n ** (e - 1)).denominator == 1:
        e -= 1
    return e


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise InvalidElement("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise InvalidElement(f"word {self} is not reduced")
        if any(not isinstance(x, int) or x == 0 for x in self.letters):
            raise InvalidElement("letters must be nonzero integers")

    @classmethod
    def reduce(cls, letters: Iterable[int]) -> "FreeWord":
        """Explicit reduction entry point for unreduced input."""
        return cls(reduce_letters(letters))

    @classmethod
    def gen(cls, i: int) -> "FreeWord":
        return cls((i,))

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        letters = []
        for tok in text.split():
            body, _, power = tok.partition("^")
            if not body.startswith("g") or not body[1:].isdigit() or power not in ("", "-1"):
                raise InvalidElement(f"bad free-group token {tok!r}")
            i = int(body[1:])
            if i < 1:
                raise InvalidElement(f"bad generator index in {tok!r}")
            letters.append(-i if power else i)
        return cls(tuple(letters))

    def __str__(self):
        return " ".join(f"g{abs(x)}" + ("^-1" if x < 0 else "") for x in self.letters)

    def __repr__(self):
        return f"FreeWord({str(self) or 'e'})"

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class NAdicElem:
    r: Fraction
    k: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidElement(f"n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.k, int):
            raise InvalidElement("k must be an integer")
        if n_power_exponent(self.r, self.n) is None:
            raise InvalidElement(f"{self.r} does not have a power-of-{self.n} denominator")

    def __repr__(self):
        return f"({self.r}, {self.k})"


@dataclass(frozen=True)
class AffineElem:
    u: Fraction
    w: Fraction
    positive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "w", Fraction(self.w))
        if self.w == 0:
            raise InvalidElement("w must be nonzero")
        if self.positive and self.w < 0:
            raise InvalidElement("w must be positive in Q x| Q^x_+")

    def __repr__(self):
        return f"({self.u}, {self.w})"


GroupElem = Union[FreeWord, NAdicElem, AffineElem]


def _same_group(a: GroupElem, b: GroupElem) -> None:
    if type(a) is not type(b):
        raise GroupMismatch(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, NAdicElem) and a.n != b.n:
        raise GroupMismatch(f"n-adic groups differ: n={a.n} vs n={b.n}")
    if isinstance(a, AffineElem) and a.positive != b.positive:
        raise GroupMismatch("cannot mix Q x| Q^x and Q x| Q^x_+ elements")


def g_mul(a: GroupElem, b: GroupElem) -> GroupElem:
    _same_group(a, b)
    if isinstance(a, FreeWord):
        return FreeWord(reduce_letters(a.letters + b.letters))
    if isinstance(a, NAdicElem):
        return NAdicElem(b.r / Fraction(a.n) ** a.k + a.r, a.k + b.k, a.n)
    return AffineElem(a.u + b.u * a.w, a.w * b.w, a.positive)


def g_inv(a: GroupElem) -> GroupElem:
    if isinstance(a, FreeWord):
        return FreeWord(tuple(-x for x in reversed(a.letters)))
    if isinstance(a, NAdicElem):
        return NAdicElem(-(Fraction(a.n) ** a.k) * a.r, -a.k, a.n)
    if isinstance(a, AffineElem):
        return AffineElem(-a.u / a.w, 1 / a.w, a.positive)
    raise InvalidElement(f"not a group element: {a!r}")


def identity_like(a: GroupElem) -> GroupElem:
    if isinstance(a, FreeWord):
        return FreeWord()
    if isinstance(a, NAdicElem):
        return NAdicElem(Fraction(0), 0, a.n)
    return AffineElem(Fraction(0), Fraction(1), a.positive)


def is_identity(a: GroupElem) -> bool:
    return a == identity_like(a)


def g_conj(s: GroupElem, t: GroupElem) -> GroupElem:
    """``s t s^-1``."""
    return g_mul(g_mul(s, t), g_inv(s))


def word_length(a: FreeWord) -> int:
    if not isinstance(a, FreeWord):
        raise GroupMismatch("word length is only defined for free-group words")
    return len(a.letters)


def positive_negative_split(a: FreeWord) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Return ``(mu, nu)`` with ``a = mu nu^-1`` and both positive, else None."""
    if not isinstance(a, FreeWord):
        raise GroupMismatch("split is only defined for free-group words")
    letters = a.letters
    i = 0
    while i < len(letters) and letters[i] > 0:
        i += 1
    tail = letters[i:]
    if any(x > 0 for x in tail):
        return None
    return letters[:i], tuple(-x for x in reversed(tail))


def group_key(a: GroupElem):
    """Total order used wherever a deterministic choice between elements is made."""
    if isinstance(a, FreeWord):
        return (len(a.letters), tuple((abs(x), x < 0) for x in a.letters))
    if isinstance(a, NAdicElem):
        return (abs(a.k), a.k < 0, a.k, a.r)
    return (a.w < 0, abs(a.w), a.u)
