"""Partial actions of the three groups on their spaces.

Each system answers ``domain(t)`` (the set ``X_{t^-1}`` where ``theta_t`` is
defined), ``apply(t, S)`` for ``S`` inside that domain, and pulls back
functions along ``theta_{t^-1}``.

Path model: ``theta_{g_i}`` prepends ``i`` on ``{x : A(i, x_1) = 1}``; the
action is semisaturated, so ``theta_{mu nu^-1}`` strips ``nu`` then prepends
``mu`` and every other nontrivial word acts on the empty set.

n-adic model: ``theta_{(r, k)}(x) = x / n^k + r`` wherever both sides lie in
[0, 1]. This is the unique affine formula compatible with the group law and
the translation and scaling relations of the model.

Residue model: on the profinite integers ``theta_{(u, w)}(x) = u + w x``,
defined where the right side is again a profinite integer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import GroupMismatch, InvalidElement, PreconditionViolation
from .functions import LCFunction
from .groups import (
    AffineElem,
    FreeWord,
    GroupElem,
    NAdicElem,
    g_inv,
    is_identity,
    n_power_exponent,
    positive_negative_split,
)
from .space import (
    AdjacencyMatrix,
    ClopenSet,
    NAdicSpace,
    PathCell,
    PathSpace,
    ResidueCell,
    ResidueSpace,
)


class PartialSystem:
    space: object
    model: str = ""

    def check(self, t: GroupElem) -> None:
        raise NotImplementedError

    def identity(self) -> GroupElem:
        raise NotImplementedError

    def domain(self, t: GroupElem) -> ClopenSet:
        """``X_{t^-1}``, the set on which ``theta_t`` is defined."""
        raise NotImplementedError

    def range(self, t: GroupElem) -> ClopenSet:
        """``X_t``, the image of ``theta_t``."""
        return self.domain(g_inv(t))

    def _apply(self, t: GroupElem, s: ClopenSet) -> ClopenSet:
        raise NotImplementedError

    def apply(self, t: GroupElem, s: ClopenSet) -> ClopenSet:
        self.check(t)
        if s.space != self.space:
            raise GroupMismatch("set does not belong to this system's space")
        if s.is_empty():
            return s
        if is_identity(t):
            return s
        dom = self.domain(t)
        if not s <= dom:
            bad = (s - dom).cells[0]
            raise PreconditionViolation(f"set is not inside the domain of {t!r}; {bad!r} lies outside")
        return self._apply(t, s)

    def generators(self) -> list[GroupElem]:
        """A small generating family, used for random testing and searches."""
        raise NotImplementedError


@dataclass(frozen=True)
class PathSystem(PartialSystem):
    """Free group ``F_n`` acting on the path space of ``A``."""

    space: PathSpace
    model = "pathspace"

    @classmethod
    def from_matrix(cls, rows) -> "PathSystem":
        return cls(PathSpace(AdjacencyMatrix.from_lists(rows)))

    @property
    def matrix(self) -> AdjacencyMatrix:
        return self.space.matrix

    @property
    def n(self) -> int:
        return self.space.n

    def check(self, t):
        if not isinstance(t, FreeWord):
            raise GroupMismatch(f"path systems are acted on by free-group words, got {t!r}")
        if any(abs(x) > self.n for x in t.letters):
            raise InvalidElement(f"{t!r} uses a generator beyond g{self.n}")

    def identity(self):
        return FreeWord()

    def generators(self):
        return [FreeWord.gen(i) for i in range(1, self.n + 1)]

    def domain(self, t):
        self.check(t)
        sp = self.space
        split = positive_negative_split(t)
        if split is None:
            return sp.empty()
        mu, nu = split
        if not sp.admissible(mu) or not sp.admissible(nu):
            return sp.empty()
        if not mu:
            return sp.set([PathCell(nu)])
        succ = self.matrix.successors(nu[-1]) if nu else range(1, self.n + 1)
        return sp.set(PathCell(nu + (j,)) for j in succ if self.matrix(mu[-1], j))

    def _apply(self, t, s):
        mu, nu = positive_negative_split(t)
        out = []
        for cell in s.cells:
            depth = max(len(cell.word), len(nu) + 1)
            for w in self.space._expand(cell.word, depth):
                out.append(PathCell(mu + w[len(nu):]))
        return self.space.set(out)


@dataclass(frozen=True)
class NAdicSystem(PartialSystem):
    """``Q_n x| Z`` acting on the doubled-point Cantor set over [0, 1]."""

    space: NAdicSpace
    model = "nadic"

    @classmethod
    def of(cls, n: int) -> "NAdicSystem":
        return cls(NAdicSpace(n))

    @property
    def n(self) -> int:
        return self.space.n

    def check(self, t):
        if not isinstance(t, NAdicElem) or t.n != self.n:
            raise GroupMismatch(f"expected an element of Q_{self.n} x| Z, got {t!r}")

    def identity(self):
        return NAdicElem(Fraction(0), 0, self.n)

    def generators(self):
        n = self.n
        return [NAdicElem(Fraction(1, n), 0, n), NAdicElem(Fraction(0), 1, n)]

    def _depth(self, t: NAdicElem, base: int = 0) -> int:
        e = n_power_exponent(t.r, self.n)
        return max(base, -t.k, e - t.k)

    def domain(self, t):
        self.check(t)
        d = self._depth(t)
        scale = self.n ** (d + t.k)
        shift = t.r * scale  # an integer by choice of d
        lo = -shift
        hi = scale - shift
        return self.space.interval(int(lo), int(hi), d)

    def _apply(self, t, s):
        sp = self.space
        out = sp.empty()
        for cell in s.cells:
            d = self._depth(t, cell.k)
            width = self.n ** (d - cell.k)
            shift = int(t.r * self.n ** (d + t.k))
            lo = cell.p * width + shift
            out = out | sp.interval(lo, lo + width, d + t.k)
        return out


@dataclass(frozen=True)
class ResidueSystem(PartialSystem):
    """``Q x| Q^x`` (or ``Q x| Q^x_+``) acting on the profinite integers."""

    positive_only: bool = False
    space: ResidueSpace = ResidueSpace()
    model = "residue"

    def check(self, t):
        if not isinstance(t, AffineElem) or t.positive != self.positive_only:
            kind = "Q x| Q^x_+" if self.positive_only else "Q x| Q^x"
            raise GroupMismatch(f"expected an element of {kind}, got {t!r}")

    def identity(self):
        return AffineElem(Fraction(0), Fraction(1), self.positive_only)

    def elem(self, u, w) -> AffineElem:
        return AffineElem(Fraction(u), Fraction(w), self.positive_only)

    def generators(self):
        gens = [self.elem(1, 1), self.elem(0, 2), self.elem(0, 3)]
        if not self.positive_only:
            gens.append(self.elem(0, -1))
        return gens

    def domain(self, t):
        self.check(t)
        a, b = t.w.numerator, t.w.denominator
        bu = t.u * b
        if bu.denominator != 1:
            return self.space.empty()
        c = (-int(bu) * pow(a, -1, b)) % b if b > 1 else 0
        return self.space.set([ResidueCell(b, c)])

    def _apply(self, t, s):
        cells = []
        for cell in s.cells:
            m = abs(t.w) * cell.a
            img = t.u + t.w * cell.c
            # cell lies inside the domain, so both are integers
            if m.denominator != 1 or img.denominator != 1:
                raise PreconditionViolation(f"cell {cell!r} is not inside the domain of {t!r}")
            cells.append(ResidueCell(int(m), int(img) % int(m)))
        return self.space.set(cells)


# --------------------------------------------------------------------------


def domain(sys: PartialSystem, t: GroupElem) -> ClopenSet:
    return sys.domain(t)


def apply(sys: PartialSystem, t: GroupElem, s: ClopenSet) -> ClopenSet:
    return sys.apply(t, s)


def alpha_pullback(sys: PartialSystem, t: GroupElem, f: LCFunction) -> LCFunction:
    """``alpha_t(f) = f o theta_{t^-1}``, supported in ``X_t``."""
    if f.space != sys.space:
        raise GroupMismatch("function does not belong to this system's space")
    sys.check(t)
    dom = sys.domain(t)
    if not f.support() <= dom:
        raise PreconditionViolation(f"support of f is not inside the domain of {t!r}")
    return f.map_sets(lambda s: sys.apply(t, s))


def _levels(sys: PartialSystem, depth: int) -> Iterator[int]:
    if isinstance(sys, ResidueSystem):
        return iter(range(1, depth + 1))
    return iter(range(0, depth + 1))


def separating_cell(sys: PartialSystem, t: GroupElem, k: ClopenSet, depth: int):
    """First cell inside ``k`` that ``theta_t`` moves off itself, or that misses the domain.

    Cells are scanned level by level (word length, n-adic scale, or modulus
    1..depth for the residue model) in canonical order. Returns None if no
    cell up to ``depth`` qualifies.
    """
    sys.check(t)
    if is_identity(t):
        raise PreconditionViolation("separating_cell needs t != e")
    if k.is_empty():
        raise PreconditionViolation("separating_cell needs a nonempty K")
    dom = sys.domain(t)
    sp = sys.space
    for level in _levels(sys, depth):
        for cell in sp.cells_at(level):
            c = sp.cell_set(cell)
            if not c <= k:
                continue
            if (c & dom).is_empty():
                return cell
            if c <= dom and (sys._apply(t, c) & c).is_empty():
                return cell
    return None


def system_from_model(model: str, **kw) -> PartialSystem:
    if model == "pathspace":
        return PathSystem.from_matrix(kw["matrix"])
    if model == "nadic":
        return NAdicSystem.of(kw["n"])
    if model == "residue":
        return ResidueSystem(bool(kw.get("positive_only", False)))
    raise InvalidElement(f"unknown model {model!r}")

