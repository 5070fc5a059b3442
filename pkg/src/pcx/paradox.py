"""Paradoxicality witnesses and their lift to properly infinite projections.

A witness for a nonempty clopen ``V`` is a list ``(V_1, t_1), ..., (V_{n+m}, t_{n+m})``
with

* ``V_1 u ... u V_n = V_{n+1} u ... u V_{n+m} = V``,
* ``V_i`` inside the domain of ``theta_{t_i}``,
* ``theta_{t_i}(V_i)`` inside ``V``,
* the images pairwise disjoint.

Disjointifying each half into indicator partitions ``h_i = 1_{W_i}`` and
setting ``a_i = alpha_{t_i}(h_i)`` gives ``x = sum_{i<=n} a_i delta_{t_i}`` and
``y = sum_{i>n} a_i delta_{t_i}`` with ``x^*x = y^*y = p``, ``y^*x = 0`` for
``p = 1_V delta_e``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .action import NAdicSystem, PartialSystem, PathSystem, ResidueSystem
from .crossprod import AlgElem, a_add, a_equals, a_mul, a_scale, a_star, from_function
from .errors import EmptySet, HypothesisFailed, InvariantBreach, PreconditionViolation, SearchExhausted
from .functions import LCFunction
from .graphs import condition_K, two_loops
from .groups import FreeWord, GroupElem, NAdicElem, g_conj, g_inv
from .space import ClopenSet, NAdicCell, PathCell, ResidueCell


@dataclass(frozen=True)
class ParadoxWitness:
    V: ClopenSet
    parts: tuple[tuple[ClopenSet, GroupElem], ...]
    n: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))
        if self.n < 1 or self.m < 1 or len(self.parts) != self.n + self.m:
            raise PreconditionViolation(
                f"witness needs n, m >= 1 and n + m parts, got n={self.n}, m={self.m}, {len(self.parts)} parts"
            )

    @property
    def first(self):
        return self.parts[: self.n]

    @property
    def second(self):
        return self.parts[self.n :]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    counterexample: object = None
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    checks: tuple[Check, ...]
    trivial: bool = False

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]


# --------------------------------------------------------------------------
# verification


def _union(space, sets) -> ClopenSet:
    # one canonicalization over all cells instead of a chain of pairwise unions
    return space.set([c for s in sets for c in s.cells])


def _first_cell(s: ClopenSet):
    return s.cells[0] if s.cells else None


def verify_witness(sys: PartialSystem, w: ParadoxWitness) -> Verdict:
    if w.V.is_empty():
        raise EmptySet("paradoxicality is only defined for nonempty V")
    sp = sys.space
    V = w.V

    covers = Check("covers", True)
    for label, half in (("first", w.first), ("second", w.second)):
        u = _union(sp, [s for s, _ in half])
        if u != V:
            diff = (V - u) if not (V - u).is_empty() else (u - V)
            covers = Check("covers", False, _first_cell(diff), f"{label} half does not cover V exactly")
            break

    in_dom = Check("in_domains", True)
    images: list[Optional[ClopenSet]] = []
    for i, (s, t) in enumerate(w.parts, 1):
        rest = s - sys.domain(t)
        if not rest.is_empty() and in_dom.ok:
            in_dom = Check("in_domains", False, _first_cell(rest), f"part {i} leaves the domain of its element")
        images.append(sys.apply(t, s) if rest.is_empty() else None)

    in_v = Check("images_in_V", True)
    for i, img in enumerate(images, 1):
        if img is None:
            continue
        rest = img - V
        if not rest.is_empty():
            in_v = Check("images_in_V", False, _first_cell(rest), f"image of part {i} leaves V")
            break

    disjoint = Check("images_disjoint", True)
    seen = sp.empty()
    for i, img in enumerate(images, 1):
        if img is None:
            continue
        meet = img & seen
        if not meet.is_empty():
            disjoint = Check("images_disjoint", False, _first_cell(meet), f"image of part {i} meets an earlier image")
            break
        seen = seen | img

    return Verdict((covers, in_dom, in_v, disjoint))


def conjugate_witness(sys: PartialSystem, w: ParadoxWitness, s: GroupElem) -> ParadoxWitness:
    """Move a witness for ``V`` (inside the domain of ``theta_s``) to one for ``theta_s(V)``."""
    parts = tuple((sys.apply(s, v), g_conj(s, t)) for v, t in w.parts)
    return ParadoxWitness(sys.apply(s, w.V), parts, w.n, w.m)


def concat_witnesses(ws: Sequence[ParadoxWitness]) -> ParadoxWitness:
    """Witness for a disjoint union: first halves, then second halves."""
    V = _union(ws[0].V.space, [w.V for w in ws])
    first = tuple(p for w in ws for p in w.first)
    second = tuple(p for w in ws for p in w.second)
    return ParadoxWitness(V, first + second, len(first), len(second))


# --------------------------------------------------------------------------
# search


def direct_candidates(sys: PartialSystem) -> list[GroupElem]:
    """Elements tried as a single pair ``[(V, s), (V, t)]`` before the cellwise construction."""
    if isinstance(sys, PathSystem):
        return sys.generators()
    if isinstance(sys, NAdicSystem):
        n = sys.n
        return [NAdicElem(Fraction(j, n), 1, n) for j in range(n)]
    if isinstance(sys, ResidueSystem):
        return [sys.elem(0, 2), sys.elem(1, 2)]
    return []


def _direct(sys: PartialSystem, V: ClopenSet) -> Optional[ParadoxWitness]:
    images = []
    for t in direct_candidates(sys):
        if V <= sys.domain(t):
            img = sys.apply(t, V)
            if img <= V:
                images.append((t, img))
    for i, (s, a) in enumerate(images):
        for t, b in images[i + 1 :]:
            if (a & b).is_empty():
                return ParadoxWitness(V, ((V, s), (V, t)), 1, 1)
    return None


def _path_cell(sys: PathSystem, cell: PathCell, bound: int) -> list[ParadoxWitness]:
    sp = sys.space
    word = cell.word
    if not word:
        return [w for j in range(1, sys.n + 1) for w in _path_cell(sys, PathCell((j,)), bound)]
    v = word[-1]
    loops = two_loops(sys.matrix, v)
    if loops is None:
        if bound <= 0:
            raise SearchExhausted(f"no loop vertex reached below {cell!r}", bound=sys.n)
        out = []
        for j in sys.matrix.successors(v):
            out.extend(_path_cell(sys, PathCell(word + (j,)), bound - 1))
        return out
    base = sp.cell_set(PathCell((v,)))
    b1, b2 = loops
    w = ParadoxWitness(base, ((base, FreeWord(b1[:-1])), (base, FreeWord(b2[:-1]))), 1, 1)
    prefix = FreeWord(word[:-1])
    if prefix.letters:
        w = conjugate_witness(sys, w, prefix)
    return [w]


def _nadic_cell(sys: NAdicSystem, cell: NAdicCell) -> ParadoxWitness:
    n = sys.n
    X = sys.space.whole()
    w = ParadoxWitness(X, ((X, NAdicElem(Fraction(0), 1, n)), (X, NAdicElem(Fraction(1, n), 1, n))), 1, 1)
    if cell.k == 0:
        return w
    # (-p, -k) maps the cell onto X, so its inverse carries the X-witness back
    s = g_inv(NAdicElem(Fraction(-cell.p), -cell.k, n))
    return conjugate_witness(sys, w, s)


def _residue_cell(sys: ResidueSystem, cell: ResidueCell) -> ParadoxWitness:
    C = sys.space.cell_set(cell)
    a, c = cell.a, cell.c
    return ParadoxWitness(C, ((C, sys.elem(-c, 2)), (C, sys.elem(a - c, 2))), 1, 1)


def _cell_witnesses(sys: PartialSystem, cell) -> list[ParadoxWitness]:
    if isinstance(sys, PathSystem):
        return _path_cell(sys, cell, sys.n)
    if isinstance(sys, NAdicSystem):
        return [_nadic_cell(sys, cell)]
    if isinstance(sys, ResidueSystem):
        return [_residue_cell(sys, cell)]
    raise PreconditionViolation(f"unsupported system {sys!r}")


def find_witness(sys: PartialSystem, V: ClopenSet, workers: Optional[int] = None) -> ParadoxWitness:
    """Deterministic witness search.

    1. Try a single pair ``[(V, s), (V, t)]`` over :func:`direct_candidates`,
       first pair in list order wins.
    2. Otherwise build a witness for each canonical cell of ``V`` and
       concatenate. Path cells are pushed down to a vertex on a loop, given two
       loops from condition (K) and moved back with the prefix. n-adic cells
       are scaled onto ``X`` and receive the shrink-and-translate witness.
       Residue classes ``c mod a`` are split into ``c`` and ``c + a`` mod ``2a``.

    ``workers`` runs step 2 on a thread pool; results keep cell order, so the
    witness does not depend on scheduling.
    """
    if V.is_empty():
        raise EmptySet("cannot find a witness for the empty set")
    if isinstance(sys, PathSystem):
        k = condition_K(sys.matrix)
        if not k.holds:
            raise HypothesisFailed(f"matrix fails condition (K) at vertex {k.culprit}")
    w = _direct(sys, V)
    if w is None:
        cells = list(V.cells)
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                groups = list(pool.map(lambda c: _cell_witnesses(sys, c), cells))
        else:
            groups = [_cell_witnesses(sys, c) for c in cells]
        w = concat_witnesses([x for g in groups for x in g])
    verdict = verify_witness(sys, w)
    if not verdict.passed:
        raise InvariantBreach(f"constructed witness failed verification: {verdict.failures()[0]}")
    return w


# --------------------------------------------------------------------------
# lift to the algebra


def _disjointify(half) -> list[tuple[ClopenSet, GroupElem]]:
    out = []
    seen = None
    for s, t in half:
        piece = s if seen is None else s - seen
        seen = s if seen is None else seen | s
        out.append((piece, t))
    return out


def witness_to_isometries(sys: PartialSystem, w: ParadoxWitness) -> tuple[AlgElem, AlgElem, AlgElem]:
    verdict = verify_witness(sys, w)
    if not verdict.passed:
        bad = verdict.failures()[0]
        raise PreconditionViolation(f"witness fails {bad.name}: {bad.detail}")

    def half_sum(half) -> AlgElem:
        pairs = []
        for piece, t in _disjointify(half):
            if not piece.is_empty():
                pairs.append((t, LCFunction.indicator(sys.apply(t, piece))))
        return AlgElem.build(sys, pairs)

    p = from_function(sys, LCFunction.indicator(w.V))
    return half_sum(w.first), half_sum(w.second), p


def _first_term(x: AlgElem):
    if x.is_zero():
        return None
    t, f = x.terms[0]
    cell, v = f.terms()[0]
    return {"t": t, "cell": cell, "value": v}


def verify_proper_infinite(sys: PartialSystem, x: AlgElem, y: AlgElem, p: AlgElem) -> Verdict:
    """The five identities ``x^*x = p``, ``y^*y = p``, ``y^*x = 0``, ``px = x``, ``py = y``."""
    zero = AlgElem.zero(sys)
    identities = (
        ("x*x=p", a_mul(a_star(x), x), p),
        ("y*y=p", a_mul(a_star(y), y), p),
        ("y*x=0", a_mul(a_star(y), x), zero),
        ("px=x", a_mul(p, x), x),
        ("py=y", a_mul(p, y), y),
    )
    checks = []
    for name, lhs, rhs in identities:
        ok = a_equals(lhs, rhs)
        cex = None if ok else _first_term(a_add(lhs, a_scale(-1, rhs)))
        checks.append(Check(name, ok, cex))
    return Verdict(tuple(checks), trivial=p.is_zero())
