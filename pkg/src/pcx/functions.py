"""Rational-valued locally constant functions on a clopen space model."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import ModelMismatch
from .space import ClopenSet, Space


@dataclass(frozen=True)
class LCFunction:
    """Stored as level sets: one canonical ClopenSet per distinct nonzero value.

    Level sets are pairwise disjoint, so two functions are equal exactly when
    their ``levels`` tuples are equal.
    """

    space: Space
    levels: tuple[tuple[Fraction, ClopenSet], ...] = ()

    @classmethod
    def build(cls, space: Space, pieces: Iterable[tuple[ClopenSet, Fraction]]) -> "LCFunction":
        """Combine pieces with pairwise disjoint sets; zero values are dropped."""
        by_value: dict[Fraction, ClopenSet] = {}
        for s, v in pieces:
            v = Fraction(v)
            if v == 0 or s.is_empty():
                continue
            if s.space != space:
                raise ModelMismatch("function piece lives in another space")
            by_value[v] = by_value[v] | s if v in by_value else s
        return cls(space, tuple(sorted(by_value.items(), key=lambda kv: kv[0])))

    @classmethod
    def indicator(cls, s: ClopenSet, value=1) -> "LCFunction":
        return cls.build(s.space, [(s, Fraction(value))])

    @classmethod
    def zero(cls, space: Space) -> "LCFunction":
        return cls(space)

    def is_zero(self) -> bool:
        return not self.levels

    def support(self) -> ClopenSet:
        out = self.space.empty()
        for _, s in self.levels:
            out = out | s
        return out

    def terms(self) -> list[tuple[object, Fraction]]:
        """The (cell, value) pairs in canonical cell order."""
        pairs = [(c, v) for v, s in self.levels for c in s.cells]
        return sorted(pairs, key=lambda cv: self.space.cell_key(cv[0]))

    def sup(self) -> Fraction:
        return max((abs(v) for v, _ in self.levels), default=Fraction(0))

    def _check(self, other: "LCFunction") -> None:
        if not isinstance(other, LCFunction) or other.space != self.space:
            raise ModelMismatch("functions live in different spaces")

    def _combine(self, other: "LCFunction", op: Callable[[Fraction, Fraction], Fraction]) -> "LCFunction":
        self._check(other)
        pieces = []
        zero = Fraction(0)
        for v, s in self.levels:
            for w, t in other.levels:
                value = op(v, w)
                if value:
                    both = s & t
                    if not both.is_empty():
                        pieces.append((both, value))
        # parts where only one side is nonzero; skipped entirely for products
        if any(op(v, zero) for v, _ in self.levels):
            rest_other = other.support()
            pieces.extend((s - rest_other, op(v, zero)) for v, s in self.levels)
        if any(op(zero, w) for w, _ in other.levels):
            rest_self = self.support()
            pieces.extend((t - rest_self, op(zero, w)) for w, t in other.levels)
        return LCFunction.build(self.space, pieces)

    def __add__(self, other: "LCFunction") -> "LCFunction":
        return self._combine(other, lambda a, b: a + b)

    def __mul__(self, other: "LCFunction") -> "LCFunction":
        return self._combine(other, lambda a, b: a * b)

    def scale(self, q) -> "LCFunction":
        q = Fraction(q)
        return LCFunction.build(self.space, [(s, v * q) for v, s in self.levels])

    def __neg__(self) -> "LCFunction":
        return self.scale(-1)

    def restrict(self, s: ClopenSet) -> "LCFunction":
        return LCFunction.build(self.space, [(t & s, v) for v, t in self.levels])

    def map_sets(self, f: Callable[[ClopenSet], ClopenSet], space: Space | None = None) -> "LCFunction":
        return LCFunction.build(space or self.space, [(f(s), v) for v, s in self.levels])

    def __repr__(self):
        return " + ".join(f"{v}*1_{s!r}" for v, s in self.levels) or "0"
