"""Exact checks of the defining relations of the generator families."""
from __future__ import annotations

from typing import Iterable

from .action import PartialSystem, PathSystem, ResidueSystem
from .crossprod import AlgElem, a_equals, residue_s, residue_u, standard_generators
from .errors import ModelMismatch
from .paradox import Check


def _first_difference(lhs: AlgElem, rhs: AlgElem):
    diff = lhs - rhs
    if diff.is_zero():
        return None
    t, f = diff.terms[0]
    cell, v = f.terms()[0]
    return {"t": t, "cell": cell, "value": v}


def _check(name: str, lhs: AlgElem, rhs: AlgElem) -> Check:
    ok = a_equals(lhs, rhs)
    return Check(name, ok, None if ok else _first_difference(lhs, rhs))


def _sum(sys, items) -> AlgElem:
    out = AlgElem.zero(sys)
    for x in items:
        out = out + x
    return out


def cuntz_krieger_checks(sys: PathSystem) -> list[Check]:
    """``sum_j s_j s_j^* = 1`` and ``s_i^* s_i = sum_j A(i,j) s_j s_j^*`` for each ``i``."""
    gens = standard_generators(sys)
    s = [gens[f"s{i}"] for i in range(1, sys.n + 1)]
    ranges = [x * x.star() for x in s]
    out = [_check("sum_j s_j s_j^* = 1", _sum(sys, ranges), AlgElem.unit(sys))]
    for i in range(1, sys.n + 1):
        rhs = _sum(sys, (ranges[j - 1] for j in sys.matrix.successors(i)))
        out.append(_check(f"s_{i}^* s_{i} = sum_j A({i},j) s_j s_j^*", s[i - 1].star() * s[i - 1], rhs))
    return out


def ring_checks(
    sys: ResidueSystem, m_values: Iterable[int] = (2, 3), n_values: Iterable[int] = range(-2, 3)
) -> list[Check]:
    m_values, n_values = list(m_values), list(n_values)
    u, s = (lambda n: residue_u(sys, n)), (lambda m: residue_s(sys, m))
    out = []
    for m in m_values:
        for m2 in m_values:
            out.append(_check(f"s_{m} s_{m2} = s_{m * m2}", s(m) * s(m2), s(m * m2)))
    for n in n_values:
        for n2 in n_values:
            out.append(_check(f"u^{n} u^{n2} = u^{n + n2}", u(n) * u(n2), u(n + n2)))
    for m in m_values:
        for n in n_values:
            out.append(_check(f"s_{m} u^{n} = u^{m * n} s_{m}", s(m) * u(n), u(m * n) * s(m)))
    for m in m_values:
        proj = s(m) * s(m).star()
        total = _sum(sys, (u(l) * proj * u(-l) for l in range(m)))
        out.append(_check(f"sum_(l mod {m}) u^l s_{m} s_{m}^* u^-l = 1", total, AlgElem.unit(sys)))
    return out


def relation_checks(sys: PartialSystem, **ranges) -> list[Check]:
    if isinstance(sys, PathSystem):
        return cuntz_krieger_checks(sys)
    if isinstance(sys, ResidueSystem):
        return ring_checks(sys, **ranges)
    raise ModelMismatch("generator relations are defined for path and residue systems only")
