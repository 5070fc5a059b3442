"""Exact Boolean algebras of clopen sets for three compact, totally disconnected spaces.

``PathSpace``
    infinite admissible paths of a 0/1 matrix with no zero rows. Cells are
    cylinders ``Z(word)``.
``NAdicSpace``
    the Cantor set obtained from [0, 1] by doubling every interior n-adic
    rational. Cells are the n-adic intervals ``[(p/n^k)^+, ((p+1)/n^k)^-]``.
``ResidueSpace``
    the inverse limit of ``(Z + (w))/(w)`` over nonzero rationals ``w``, which
    is the ring of profinite integers. Cells are residue classes.

A :class:`ClopenSet` always holds the unique canonical cell list of its point
set, so ``==`` on sets is equality of the underlying subsets.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import CellLimitExceeded, InvalidCell, InvalidLevel, InvalidMatrix, ModelMismatch

DEFAULT_MAX_CELLS = 100_000


def max_cells() -> int:
    """Cap on intermediate cell counts, read from ``PCX_MAX_CELLS``."""
    raw = os.environ.get("PCX_MAX_CELLS")
    if not raw:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        raise CellLimitExceeded(f"PCX_MAX_CELLS is not an integer: {raw!r}") from None
    return max(value, 1)


def _budget(count: int, what: str) -> None:
    limit = max_cells()
    if count > limit:
        raise CellLimitExceeded(f"{what} needs {count} cells, limit is {limit} (PCX_MAX_CELLS)")


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Square 0/1 matrix with no zero rows. Vertices are numbered from 1."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise InvalidMatrix("matrix must have at least one row")
        for i, row in enumerate(self.rows, 1):
            if len(row) != n:
                raise InvalidMatrix(f"row {i} has length {len(row)}, expected {n}")
            if any(v not in (0, 1) for v in row):
                raise InvalidMatrix(f"row {i} has entries outside {{0, 1}}")
            if not any(row):
                raise InvalidMatrix(f"row {i} is all zeros")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "AdjacencyMatrix":
        try:
            return cls(tuple(tuple(int(v) for v in row) for row in rows))
        except TypeError:
            raise InvalidMatrix("matrix must be a list of lists of integers") from None

    @property
    def n(self) -> int:
        return len(self.rows)

    def __call__(self, i: int, j: int) -> int:
        return self.rows[i - 1][j - 1]

    def successors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if self.rows[i - 1][j - 1])

    def out_degree(self, i: int) -> int:
        return sum(self.rows[i - 1])

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True, order=True)
class PathCell:
    """Cylinder of infinite paths starting with ``word`` (letters 1..n)."""

    word: tuple[int, ...] = ()

    def __repr__(self):
        return "Z(" + ".".join(map(str, self.word)) + ")"


@dataclass(frozen=True, order=True)
class NAdicCell:
    """The interval ``[(p/n^k)^+, ((p+1)/n^k)^-]``; ``(0, 0)`` is the whole space."""

    p: int
    k: int

    def __repr__(self):
        return f"I({self.p}/{self.k})"


@dataclass(frozen=True)
class ResidueCell:
    """``{x : x_w = c/b mod (w)}`` for ``w = a/b``; with ``b = 1`` this is ``x = c mod a``."""

    a: int
    c: int
    b: int = 1

    @property
    def w(self) -> Fraction:
        return Fraction(self.a, self.b)

    def __repr__(self):
        if self.b == 1:
            return f"C({self.a},{self.c})"
        return f"C({self.a}/{self.b},{self.c})"


Cell = Union[PathCell, NAdicCell, ResidueCell]


class Space:
    """Common interface. Subclasses work on an internal cell encoding."""

    kind: str = ""
    cell_type: type = object

    def whole(self) -> "ClopenSet":
        raise NotImplementedError

    def empty(self) -> "ClopenSet":
        return ClopenSet(self, ())

    def set(self, cells: Iterable[Cell]) -> "ClopenSet":
        """Canonical set for the union of ``cells``."""
        cells = list(cells)
        for c in cells:
            self._check_cell(c)
        return ClopenSet(self, self._canonical(cells))

    def cell_set(self, cell: Cell) -> "ClopenSet":
        return self.set([cell])

    def _check_cell(self, cell) -> None:
        if not isinstance(cell, self.cell_type):
            raise ModelMismatch(f"{type(cell).__name__} does not belong to a {self.kind} space")

    # hooks ---------------------------------------------------------------
    def _canonical(self, cells: list) -> tuple:
        raise NotImplementedError

    def _intersect(self, a: tuple, b: tuple) -> tuple:
        raise NotImplementedError

    def _complement(self, a: tuple) -> tuple:
        raise NotImplementedError

    def _refine(self, cells: tuple, level: int) -> list:
        raise NotImplementedError

    def granularity(self, cells: Iterable[Cell]) -> int:
        raise NotImplementedError

    def cells_at(self, level: int) -> Iterator[Cell]:
        """Every cell of the given granularity, in canonical order."""
        raise NotImplementedError

    def cell_key(self, cell: Cell):
        raise NotImplementedError

    def is_singleton(self, cell: Cell) -> bool:
        return False


# --------------------------------------------------------------------------
# prefix-tree spaces


class _TreeSpace(Space):
    """Spaces whose cells are nodes of a rooted tree, encoded as words."""

    def _children(self, word: tuple) -> tuple:
        raise NotImplementedError

    def _word(self, cell) -> tuple:
        raise NotImplementedError

    def _cell(self, word: tuple):
        raise NotImplementedError

    def whole(self) -> "ClopenSet":
        return ClopenSet(self, (self._cell(()),))

    def cell_key(self, cell):
        return self._word(cell)

    def granularity(self, cells) -> int:
        return max((len(self._word(c)) for c in cells), default=0)

    def _canonical(self, cells) -> tuple:
        return tuple(self._cell(w) for w in self._canon_words({self._word(c) for c in cells}))

    def _canon_words(self, words: set) -> list:
        if not words:
            return []
        prefixes = {w[:i] for w in words for i in range(len(w))}
        memo: dict = {}

        def full(w):
            if w in words:
                return True
            if w not in prefixes:
                return False
            if w not in memo:
                memo[w] = all(full(c) for c in self._children(w))
            return memo[w]

        out = []
        stack = [()]
        while stack:
            w = stack.pop()
            if full(w):
                out.append(w)
            elif w in prefixes:
                stack.extend(self._children(w))
        out.sort()
        return out

    def _intersect(self, a, b) -> tuple:
        wa = [self._word(c) for c in a]
        wb = [self._word(c) for c in b]
        out = set()
        for x in wa:
            for y in wb:
                if y[: len(x)] == x:
                    out.add(y)
                elif x[: len(y)] == y:
                    out.add(x)
        return tuple(self._cell(w) for w in self._canon_words(out))

    def _complement(self, a) -> tuple:
        words = {self._word(c) for c in a}
        prefixes = {w[:i] for w in words for i in range(len(w))}
        out = []
        stack = [()]
        while stack:
            w = stack.pop()
            if w in words:
                continue
            if w not in prefixes:
                out.append(w)
            else:
                stack.extend(self._children(w))
        return tuple(self._cell(w) for w in self._canon_words(set(out)))

    def _expand(self, word: tuple, depth: int) -> list:
        if len(word) > depth:
            raise InvalidLevel(f"cannot refine a depth-{len(word)} cell to depth {depth}")
        layer = [word]
        for _ in range(depth - len(word)):
            layer = [c for w in layer for c in self._children(w)]
            _budget(len(layer), "refinement")
        return layer

    def _refine(self, cells, level) -> list:
        out = []
        for c in cells:
            out.extend(self._expand(self._word(c), level))
        _budget(len(out), "refinement")
        return [self._cell(w) for w in sorted(out)]

    def cells_at(self, level: int) -> Iterator:
        for w in self._expand((), level):
            yield self._cell(w)


@dataclass(frozen=True)
class PathSpace(_TreeSpace):
    """Infinite admissible paths ``mu_1 mu_2 ...`` with ``A(mu_j, mu_{j+1}) = 1``."""

    matrix: AdjacencyMatrix
    kind = "pathspace"
    cell_type = PathCell

    @property
    def n(self) -> int:
        return self.matrix.n

    def admissible(self, word: Sequence[int]) -> bool:
        if any(not 1 <= x <= self.n for x in word):
            return False
        return all(self.matrix(word[j], word[j + 1]) for j in range(len(word) - 1))

    def _children(self, word):
        if not word:
            return tuple((j,) for j in range(1, self.n + 1))
        return tuple(word + (j,) for j in self.matrix.successors(word[-1]))

    def _word(self, cell):
        if not isinstance(cell, PathCell):
            raise ModelMismatch(f"{type(cell).__name__} does not belong to a pathspace")
        return cell.word

    def _cell(self, word):
        return PathCell(word)

    def _check_cell(self, cell):
        super()._check_cell(cell)
        if not self.admissible(cell.word):
            raise InvalidCell(f"word {cell.word} is not admissible for this matrix")

    def is_singleton(self, cell: PathCell) -> bool:
        """True when the cylinder contains exactly one path (forced continuation)."""
        if not cell.word:
            return self.n == 1
        seen = set()
        stack = [cell.word[-1]]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            succ = self.matrix.successors(v)
            if len(succ) != 1:
                return False
            stack.extend(succ)
        return True


@dataclass(frozen=True)
class NAdicSpace(_TreeSpace):
    """The doubled-point Cantor set over [0, 1] in base ``n``."""

    n: int
    kind = "nadic"
    cell_type = NAdicCell

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidCell(f"n-adic base must be an integer >= 2, got {self.n!r}")

    def _children(self, word):
        return tuple(word + (d,) for d in range(self.n))

    def _word(self, cell):
        if not isinstance(cell, NAdicCell):
            raise ModelMismatch(f"{type(cell).__name__} does not belong to an n-adic space")
        digits = []
        p = cell.p
        for _ in range(cell.k):
            p, d = divmod(p, self.n)
            digits.append(d)
        return tuple(reversed(digits))

    def _cell(self, word):
        p = 0
        for d in word:
            p = p * self.n + d
        return NAdicCell(p, len(word))

    def _check_cell(self, cell):
        super()._check_cell(cell)
        if cell.k < 0 or not 0 <= cell.p < self.n ** cell.k:
            raise InvalidCell(f"n-adic cell {cell} out of range for n={self.n}")

    def interval(self, lo: int, hi: int, k: int) -> "ClopenSet":
        """Union of the depth-``k`` cells ``lo <= p < hi`` as maximal aligned blocks."""
        lo = max(lo, 0)
        hi = min(hi, self.n ** k)
        cells = []
        p = lo
        while p < hi:
            size, level = 1, k
            while level > 0 and p % (size * self.n) == 0 and p + size * self.n <= hi:
                size *= self.n
                level -= 1
            cells.append(NAdicCell(p // size, level))
            p += size
        return ClopenSet(self, self._canonical(cells))


# --------------------------------------------------------------------------
# profinite integers


def _lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class ResidueSpace(Space):
    """Profinite integers; ``C(a, c)`` is the class of ``c`` modulo ``a``.

    A cell given with ``b > 1`` (``w = a/b``) is rewritten as ``C(a, c * b^-1 mod a)``:
    multiplication by ``b`` identifies ``(Z + (a/b))/(a/b)`` with ``Z/aZ``.
    """

    kind = "residue"
    cell_type = ResidueCell

    def whole(self) -> "ClopenSet":
        return ClopenSet(self, (ResidueCell(1, 0),))

    def cell_key(self, cell):
        return (cell.a, cell.c)

    def _check_cell(self, cell):
        super()._check_cell(cell)
        if cell.a < 1 or cell.b < 1 or math.gcd(cell.a, cell.b) != 1 or not 0 <= cell.c < cell.a:
            raise InvalidCell(f"residue cell {cell!r} is not in lowest terms with 0 <= c < a")

    @staticmethod
    def normalize(cell: ResidueCell) -> ResidueCell:
        if cell.b == 1:
            return cell
        if cell.a == 1:
            return ResidueCell(1, 0)
        return ResidueCell(cell.a, cell.c * pow(cell.b, -1, cell.a) % cell.a)

    def granularity(self, cells) -> int:
        return _lcm(*(self.normalize(c).a for c in cells))

    def _lift(self, cells, modulus: int) -> set:
        _budget(modulus, "residue lift")
        out = set()
        for cell in cells:
            cell = self.normalize(cell)
            out.update(range(cell.c, modulus, cell.a))
        return out

    def _from_residues(self, modulus: int, residues: set) -> tuple:
        if not residues:
            return ()
        # a byte mask keeps the class scans in C: mask[c::d] is the class c mod d
        mask = bytearray(modulus)
        for r in residues:
            mask[r] = 1
        # shrink to the least period of the set
        for p in _prime_factors(modulus):
            while modulus % p == 0:
                q = modulus // p
                if mask[q:] + mask[:q] == mask:
                    mask = mask[:q]
                    modulus = q
                else:
                    break
        # greedy: coarsest classes first, each disjoint from those already taken
        left = sum(mask)
        out = []
        for d in _divisors(modulus):
            size = modulus // d
            c = mask.find(1, 0, d)
            while c != -1:
                if mask[c::d].count(1) == size:
                    out.append(ResidueCell(d, c))
                    mask[c::d] = bytes(size)
                    left -= size
                c = mask.find(1, c + 1, d)
            if not left:
                break
        return tuple(sorted(out, key=self.cell_key))

    def _canonical(self, cells) -> tuple:
        if not cells:
            return ()
        m = self.granularity(cells)
        return self._from_residues(m, self._lift(cells, m))

    def _intersect(self, a, b) -> tuple:
        if not a or not b:
            return ()
        m = _lcm(self.granularity(a), self.granularity(b))
        return self._from_residues(m, self._lift(a, m) & self._lift(b, m))

    def _union(self, a, b) -> tuple:
        m = _lcm(self.granularity(a), self.granularity(b))
        return self._from_residues(m, self._lift(a, m) | self._lift(b, m))

    def _complement(self, a) -> tuple:
        m = self.granularity(a)
        return self._from_residues(m, set(range(m)) - self._lift(a, m))

    def _difference(self, a, b) -> tuple:
        if not a or not b:
            return tuple(a)
        m = _lcm(self.granularity(a), self.granularity(b))
        return self._from_residues(m, self._lift(a, m) - self._lift(b, m))

    def _subset(self, a, b) -> bool:
        m = _lcm(self.granularity(a), self.granularity(b))
        return self._lift(a, m) <= self._lift(b, m)

    def _refine(self, cells, level) -> list:
        for c in cells:
            if level < 1 or level % self.normalize(c).a:
                raise InvalidLevel(f"modulus {level} is not a multiple of {self.normalize(c).a}")
        return [ResidueCell(level, r) for r in sorted(self._lift(cells, level))]

    def cells_at(self, level: int) -> Iterator[ResidueCell]:
        for c in range(level):
            yield ResidueCell(level, c)

    def residues(self, s: "ClopenSet", modulus: int) -> set:
        """Integer residues mod ``modulus`` lying in ``s``; ``modulus`` must be a common multiple."""
        for c in s.cells:
            if modulus % c.a:
                raise InvalidLevel(f"modulus {modulus} is not a multiple of {c.a}")
        return self._lift(s.cells, modulus)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ClopenSet:
    """Canonical finite disjoint union of cells. Build via :meth:`Space.set`."""

    space: Space
    cells: tuple

    def _same(self, other: "ClopenSet") -> None:
        if not isinstance(other, ClopenSet) or other.space != self.space:
            raise ModelMismatch("operands live in different spaces")

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        self._same(other)
        if isinstance(self.space, ResidueSpace):
            return ClopenSet(self.space, self.space._union(self.cells, other.cells))
        return ClopenSet(self.space, self.space._canonical(list(self.cells + other.cells)))

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        self._same(other)
        return ClopenSet(self.space, self.space._intersect(self.cells, other.cells))

    def __invert__(self) -> "ClopenSet":
        return ClopenSet(self.space, self.space._complement(self.cells))

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        if isinstance(self.space, ResidueSpace):
            self._same(other)
            return ClopenSet(self.space, self.space._difference(self.cells, other.cells))
        return self & ~other

    def __le__(self, other: "ClopenSet") -> bool:
        if isinstance(self.space, ResidueSpace):
            self._same(other)
            return self.space._subset(self.cells, other.cells)
        return (self & other) == self

    def is_empty(self) -> bool:
        return not self.cells

    def is_whole(self) -> bool:
        return self == self.space.whole()

    def refine(self, level: int) -> list:
        return self.space._refine(self.cells, level)

    def granularity(self) -> int:
        return self.space.granularity(self.cells)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.cells)) + "}"


def canonicalize(space: Space, cells: Iterable[Cell]) -> ClopenSet:
    return space.set(cells)


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a | b


def intersect(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a & b


def complement(a: ClopenSet) -> ClopenSet:
    return ~a


def is_empty(a: ClopenSet) -> bool:
    return a.is_empty()


def is_subset(a: ClopenSet, b: ClopenSet) -> bool:
    return a <= b


def equals(a: ClopenSet, b: ClopenSet) -> bool:
    a._same(b)
    return a == b


def refine(a: ClopenSet, level: int) -> list:
    return a.refine(level)
