"""JSON codecs. Rationals are ``[num, den]`` in lowest terms with ``den > 0``.

Decoding needs the system, since cells and group elements only make sense
relative to a space and a group. Output is canonical: :func:`dumps` sorts keys
and uses fixed separators, so equal values give identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .action import NAdicSystem, PartialSystem, PathSystem, ResidueSystem
from .crossprod import AlgElem
from .errors import ParseError, PcxError
from .functions import LCFunction
from .graphs import ExitResult, GraphReport, KResult, TopFreeResult
from .groups import AffineElem, FreeWord, GroupElem, NAdicElem
from .paradox import Check, ParadoxWitness, Verdict
from .space import ClopenSet, NAdicCell, PathCell, ResidueCell


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"key {key!r} has the wrong type")
    return value


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer")
    return value


# rationals ----------------------------------------------------------------


def rat_to_json(q: Fraction) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def rat_from_json(obj) -> Fraction:
    if not isinstance(obj, list) or len(obj) != 2:
        raise ParseError(f"rational must be [num, den], got {obj!r}")
    num, den = _int(obj[0], "numerator"), _int(obj[1], "denominator")
    if den <= 0:
        raise ParseError("denominator must be positive")
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise ParseError(f"rational {obj!r} is not in lowest terms")
    return q


# systems ------------------------------------------------------------------


def system_to_json(sys: PartialSystem) -> dict:
    if isinstance(sys, PathSystem):
        return {"model": "pathspace", "matrix": sys.matrix.to_lists()}
    if isinstance(sys, NAdicSystem):
        return {"model": "nadic", "n": sys.n}
    return {"model": "residue", "ring": "Z", "positive_only": sys.positive_only}


def system_from_json(obj) -> PartialSystem:
    model = _need(obj, "model", str)
    if model == "pathspace":
        rows = _need(obj, "matrix", list)
        if not all(isinstance(r, list) for r in rows):
            raise ParseError("matrix must be a list of rows")
        return PathSystem.from_matrix(rows)
    if model == "nadic":
        return NAdicSystem.of(_int(_need(obj, "n"), "n"))
    if model == "residue":
        ring = obj.get("ring", "Z")
        if ring != "Z":
            raise ParseError(f"only the ring Z is supported, got {ring!r}")
        positive = obj.get("positive_only", False)
        if not isinstance(positive, bool):
            raise ParseError("positive_only must be a boolean")
        return ResidueSystem(positive)
    raise ParseError(f"unknown model {model!r}")


# group elements -----------------------------------------------------------


def elem_to_json(t: GroupElem) -> dict:
    if isinstance(t, FreeWord):
        return {"t": str(t)}
    if isinstance(t, NAdicElem):
        return {"r": rat_to_json(t.r), "k": t.k}
    return {"u": rat_to_json(t.u), "w": rat_to_json(t.w)}


def elem_from_json(sys: PartialSystem, obj) -> GroupElem:
    if isinstance(sys, PathSystem):
        t = FreeWord.parse(_need(obj, "t", str))
    elif isinstance(sys, NAdicSystem):
        t = NAdicElem(rat_from_json(_need(obj, "r")), _int(_need(obj, "k"), "k"), sys.n)
    else:
        t = AffineElem(rat_from_json(_need(obj, "u")), rat_from_json(_need(obj, "w")), sys.positive_only)
    sys.check(t)
    return t


# cells and sets -----------------------------------------------------------


def cell_to_json(cell) -> dict:
    if isinstance(cell, PathCell):
        return {"w": ".".join(map(str, cell.word))}
    if isinstance(cell, NAdicCell):
        return {"p": cell.p, "k": cell.k}
    return {"a": cell.a, "b": cell.b, "c": cell.c}


def cell_from_json(sys: PartialSystem, obj):
    if isinstance(sys, PathSystem):
        text = _need(obj, "w", str)
        try:
            word = tuple(int(x) for x in text.split(".")) if text else ()
        except ValueError:
            raise ParseError(f"bad path word {text!r}") from None
        return PathCell(word)
    if isinstance(sys, NAdicSystem):
        return NAdicCell(_int(_need(obj, "p"), "p"), _int(_need(obj, "k"), "k"))
    b = _int(obj.get("b", 1) if isinstance(obj, dict) else None, "b")
    return ResidueCell(_int(_need(obj, "a"), "a"), _int(_need(obj, "c"), "c"), b)


def set_to_json(s: ClopenSet) -> dict:
    return {"model": s.space.kind, "cells": [cell_to_json(c) for c in s.cells]}


def set_from_json(sys: PartialSystem, obj) -> ClopenSet:
    model = _need(obj, "model", str)
    if model != sys.space.kind:
        raise ParseError(f"set is for model {model!r}, system is {sys.space.kind!r}")
    cells = _need(obj, "cells", list)
    return sys.space.set(cell_from_json(sys, c) for c in cells)


# functions and algebra elements -------------------------------------------


def function_to_json(f: LCFunction) -> list:
    return [{"cell": cell_to_json(c), "v": rat_to_json(v)} for c, v in f.terms()]


def function_from_json(sys: PartialSystem, obj) -> LCFunction:
    if not isinstance(obj, list):
        raise ParseError("function must be a list of {cell, v} entries")
    pieces = []
    seen = sys.space.empty()
    for entry in obj:
        s = sys.space.cell_set(cell_from_json(sys, _need(entry, "cell")))
        if not (s & seen).is_empty():
            raise ParseError("function cells overlap")
        seen = seen | s
        pieces.append((s, rat_from_json(_need(entry, "v"))))
    return LCFunction.build(sys.space, pieces)


def alg_to_json(x: AlgElem) -> dict:
    return {"terms": [{"t": elem_to_json(t), "f": function_to_json(f)} for t, f in x.terms]}


def alg_from_json(sys: PartialSystem, obj) -> AlgElem:
    terms = _need(obj, "terms", list)
    return AlgElem.build(
        sys, [(elem_from_json(sys, _need(e, "t")), function_from_json(sys, _need(e, "f"))) for e in terms]
    )


# witnesses and reports ----------------------------------------------------


def witness_to_json(w: ParadoxWitness) -> dict:
    return {
        "V": set_to_json(w.V),
        "n": w.n,
        "m": w.m,
        "parts": [{"set": set_to_json(s), "t": elem_to_json(t)} for s, t in w.parts],
    }


def witness_from_json(sys: PartialSystem, obj) -> ParadoxWitness:
    parts = _need(obj, "parts", list)
    return ParadoxWitness(
        set_from_json(sys, _need(obj, "V")),
        tuple((set_from_json(sys, _need(p, "set")), elem_from_json(sys, _need(p, "t"))) for p in parts),
        _int(_need(obj, "n"), "n"),
        _int(_need(obj, "m"), "m"),
    )


def _plain(obj):
    """Counterexamples can be cells, dicts of elements, or None."""
    if obj is None:
        return None
    if isinstance(obj, (PathCell, NAdicCell, ResidueCell)):
        return cell_to_json(obj)
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (FreeWord, NAdicElem, AffineElem)):
        return elem_to_json(obj)
    if isinstance(obj, Fraction):
        return rat_to_json(obj)
    return obj


def check_to_json(c: Check) -> dict:
    out = {"name": c.name, "ok": c.ok}
    if not c.ok:
        out["counterexample"] = _plain(c.counterexample)
        if c.detail:
            out["detail"] = c.detail
    return out


def verdict_to_json(v: Verdict) -> dict:
    return {"passed": v.passed, "trivial": v.trivial, "checks": [check_to_json(c) for c in v.checks]}


def k_to_json(k: KResult) -> dict:
    out: dict = {"holds": k.holds}
    if k.holds:
        out["loops"] = {str(v): [list(b1), list(b2)] for v, (b1, b2) in sorted(k.loops.items())}
    else:
        out["culprit"] = k.culprit
        out["culprit_loop"] = list(k.culprit_loop)
    return out


def exits_to_json(e: ExitResult) -> dict:
    out: dict = {"holds": e.holds}
    if not e.holds:
        out["culprit_cycle"] = list(e.cycle)
    return out


def report_to_json(r: GraphReport) -> dict:
    return {
        "zero_rows": r.zero_rows,
        "condition_K": k_to_json(r.k),
        "every_cycle_has_exit": exits_to_json(r.exits),
        "hereditary_saturated": [list(h) for h in r.hereditary_saturated],
    }


def topfree_to_json(r: TopFreeResult) -> dict:
    out: dict = {"topologically_free": r.holds}
    if not r.holds:
        out["culprit"] = {"t": elem_to_json(r.word), "cell": cell_to_json(r.cell)}
    return out


def error_to_json(err: PcxError) -> dict:
    out = {"error": err.code, "message": str(err)}
    bound = getattr(err, "bound", None)
    if bound is not None:
        out["bound"] = bound
    return out


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
