"""The dense *-algebra of finite sums ``sum_t f_t delta_t`` with exact rational coefficients.

Product and involution on monomials::

    (a delta_t)(b delta_s) = alpha_t(alpha_{t^-1}(a) b) delta_{ts}
    (a delta_t)^*          = alpha_{t^-1}(a) delta_{t^-1}

The norm is ``sum_t sup|f_t|`` and ``E`` reads off the coefficient at ``e``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .action import PartialSystem, PathSystem, ResidueSystem, alpha_pullback
from .errors import InvariantBreach, ModelMismatch, PreconditionViolation
from .functions import LCFunction
from .groups import GroupElem, g_inv, g_mul, group_key, is_identity
from .space import ClopenSet


@dataclass(frozen=True)
class AlgElem:
    sys: PartialSystem
    terms: tuple[tuple[GroupElem, LCFunction], ...] = ()

    @classmethod
    def build(cls, sys: PartialSystem, pairs: Iterable[tuple[GroupElem, LCFunction]]) -> "AlgElem":
        """Sum of monomials; each coefficient must be supported in ``X_t``."""
        acc: dict = {}
        for t, f in pairs:
            sys.check(t)
            if f.space != sys.space:
                raise ModelMismatch("coefficient lives in another space")
            acc[t] = acc[t] + f if t in acc else f
        terms = []
        for t, f in acc.items():
            if f.is_zero():
                continue
            if not f.support() <= sys.range(t):
                raise PreconditionViolation(f"coefficient at {t!r} is not supported in X_t")
            terms.append((t, f))
        terms.sort(key=lambda tf: group_key(tf[0]))
        return cls(sys, tuple(terms))

    @classmethod
    def zero(cls, sys: PartialSystem) -> "AlgElem":
        return cls(sys)

    @classmethod
    def unit(cls, sys: PartialSystem) -> "AlgElem":
        return cls.build(sys, [(sys.identity(), LCFunction.indicator(sys.space.whole()))])

    @classmethod
    def monomial(cls, sys: PartialSystem, t: GroupElem, f: LCFunction | ClopenSet) -> "AlgElem":
        if isinstance(f, ClopenSet):
            f = LCFunction.indicator(f)
        return cls.build(sys, [(t, f)])

    def coeff(self, t: GroupElem) -> LCFunction:
        for s, f in self.terms:
            if s == t:
                return f
        return LCFunction.zero(self.sys.space)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return a_add(self, other)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return a_add(self, a_scale(-1, other))

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        return a_mul(self, other)

    def star(self) -> "AlgElem":
        return a_star(self)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({f!r}) d{t!r}" for t, f in self.terms)


def _same(x: AlgElem, y: AlgElem) -> None:
    if x.sys != y.sys:
        raise ModelMismatch("elements belong to different systems")


def a_add(x: AlgElem, y: AlgElem) -> AlgElem:
    _same(x, y)
    return AlgElem.build(x.sys, list(x.terms) + list(y.terms))


def a_scale(q, x: AlgElem) -> AlgElem:
    q = Fraction(q)
    return AlgElem.build(x.sys, [(t, f.scale(q)) for t, f in x.terms])


def _monomial_product(sys: PartialSystem, t, a: LCFunction, s, b: LCFunction):
    inner = alpha_pullback(sys, g_inv(t), a) * b
    coeff = alpha_pullback(sys, t, inner)
    ts = g_mul(t, s)
    if not coeff.support() <= sys.range(ts):
        raise InvariantBreach(f"product coefficient escapes X_ts for t={t!r}, s={s!r}")
    return ts, coeff


def a_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    _same(x, y)
    pairs = []
    for t, a in x.terms:
        for s, b in y.terms:
            pairs.append(_monomial_product(x.sys, t, a, s, b))
    return AlgElem.build(x.sys, pairs)


def a_star(x: AlgElem) -> AlgElem:
    return AlgElem.build(x.sys, [(g_inv(t), alpha_pullback(x.sys, g_inv(t), f)) for t, f in x.terms])


def expectation(x: AlgElem) -> LCFunction:
    for t, f in x.terms:
        if is_identity(t):
            return f
    return LCFunction.zero(x.sys.space)


def sup_norm(f: LCFunction) -> Fraction:
    return f.sup()


def l1_norm(x: AlgElem) -> Fraction:
    return sum((f.sup() for _, f in x.terms), Fraction(0))


def a_equals(x: AlgElem, y: AlgElem) -> bool:
    _same(x, y)
    return x.terms == y.terms


def is_projection(x: AlgElem) -> bool:
    return a_equals(a_mul(x, x), x) and a_equals(a_star(x), x)


def from_function(sys: PartialSystem, f: LCFunction) -> AlgElem:
    """``f delta_e``."""
    return AlgElem.build(sys, [(sys.identity(), f)])


def standard_generators(
    sys: PartialSystem, m_values: Iterable[int] = (2, 3), n_values: Iterable[int] = (-2, -1, 0, 1, 2)
) -> Mapping[str, AlgElem]:
    """``s_i = 1_{X_{g_i}} delta_{g_i}`` for path systems.

    For the residue system ``u^n = 1_X delta_{(n,1)}`` and
    ``s_m = 1_{X_{(0,m)}} delta_{(0,m)}`` for the requested ``n`` and ``m``.
    """
    if isinstance(sys, PathSystem):
        out = {}
        for g in sys.generators():
            out[f"s{g.letters[0]}"] = AlgElem.monomial(sys, g, sys.range(g))
        return out
    if isinstance(sys, ResidueSystem):
        out = {}
        for n in n_values:
            out[f"u^{n}"] = residue_u(sys, n)
        for m in m_values:
            out[f"s{m}"] = residue_s(sys, m)
        return out
    raise ModelMismatch("standard generators exist only for path and residue systems")


def residue_u(sys: ResidueSystem, n: int) -> AlgElem:
    """``u^n = 1_X delta_{(n, 1)}``."""
    return AlgElem.monomial(sys, sys.elem(n, 1), sys.space.whole())


def residue_s(sys: ResidueSystem, m: int) -> AlgElem:
    """``s_m = 1_{X_{(0, m)}} delta_{(0, m)}``."""
    t = sys.elem(0, m)
    return AlgElem.monomial(sys, t, sys.range(t))
