"""Command line front end.

Exit status: 0 when every check passes or the requested object was produced,
1 when a mathematical check fails (the report says which), 2 for bad input,
unmet preconditions or an exceeded cell budget.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import serialize as ser
from .action import PathSystem
from .errors import ModelMismatch, PcxError, SearchExhausted
from .graphs import graph_report, invariant_clopen_sets, topfree_bruteforce
from .paradox import find_witness, verify_proper_infinite, verify_witness, witness_to_isometries
from .relations import relation_checks


def _system(path: str):
    return ser.system_from_json(ser.load_json(path))


def _path_system(path: str) -> PathSystem:
    sys_ = _system(path)
    if not isinstance(sys_, PathSystem):
        raise ModelMismatch("this command needs a pathspace system")
    return sys_


def cmd_verify_relations(args) -> tuple[dict, int]:
    sys_ = _system(args.system)
    checks = relation_checks(sys_, m_values=args.m, n_values=args.n) if sys_.model == "residue" else relation_checks(sys_)
    ok = all(c.ok for c in checks)
    return {"passed": ok, "relations": [ser.check_to_json(c) for c in checks]}, 0 if ok else 1


def cmd_paradox_find(args) -> tuple[dict, int]:
    sys_ = _system(args.system)
    V = ser.set_from_json(sys_, ser.load_json(args.set))
    try:
        w = find_witness(sys_, V, workers=args.workers)
    except SearchExhausted as exc:
        return ser.error_to_json(exc), 1
    return ser.witness_to_json(w), 0


def cmd_paradox_verify(args) -> tuple[dict, int]:
    sys_ = _system(args.system)
    w = ser.witness_from_json(sys_, ser.load_json(args.witness))
    v = verify_witness(sys_, w)
    return ser.verdict_to_json(v), 0 if v.passed else 1


def cmd_paradox_lift(args) -> tuple[dict, int]:
    sys_ = _system(args.system)
    w = ser.witness_from_json(sys_, ser.load_json(args.witness))
    x, y, p = witness_to_isometries(sys_, w)
    v = verify_proper_infinite(sys_, x, y, p)
    report = {"x": ser.alg_to_json(x), "y": ser.alg_to_json(y), "p": ser.alg_to_json(p), "verdict": ser.verdict_to_json(v)}
    return report, 0 if v.passed else 1


def cmd_graph_check(args) -> tuple[dict, int]:
    r = graph_report(_path_system(args.system).matrix)
    return ser.report_to_json(r), 0 if r.passed else 1


def cmd_topfree(args) -> tuple[dict, int]:
    r = topfree_bruteforce(_path_system(args.system), args.max_word_len, args.depth)
    return ser.topfree_to_json(r), 0 if r.holds else 1


def cmd_invariants(args) -> tuple[dict, int]:
    sets = invariant_clopen_sets(_path_system(args.system), args.depth)
    return {"depth": args.depth, "sets": [ser.set_to_json(s) for s in sets]}, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcx", description="Exact partial dynamical systems and paradoxicality witnesses.")
    parser.add_argument("-o", "--output", help="write the report here instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-relations", help="check the generator relations of a system")
    p.add_argument("system")
    p.add_argument("--m", type=int, nargs="+", default=[2, 3], help="scaling generators s_m to test")
    p.add_argument("--n", type=int, nargs="+", default=list(range(-2, 3)), help="translation powers u^n to test")
    p.set_defaults(func=cmd_verify_relations)

    px = sub.add_parser("paradox", help="witness search, verification and lifting")
    psub = px.add_subparsers(dest="action", required=True)
    p = psub.add_parser("find")
    p.add_argument("system")
    p.add_argument("--set", required=True, help="clopen set JSON file")
    p.add_argument("--workers", type=int, default=None, help="threads for the cellwise search")
    p.set_defaults(func=cmd_paradox_find)
    p = psub.add_parser("verify")
    p.add_argument("system")
    p.add_argument("witness")
    p.set_defaults(func=cmd_paradox_verify)
    p = psub.add_parser("lift")
    p.add_argument("system")
    p.add_argument("witness")
    p.set_defaults(func=cmd_paradox_lift)

    gx = sub.add_parser("graph", help="graph checks for pathspace systems")
    gsub = gx.add_subparsers(dest="action", required=True)
    p = gsub.add_parser("check")
    p.add_argument("system")
    p.set_defaults(func=cmd_graph_check)

    p = sub.add_parser("topfree", help="search for pointwise fixed cylinders")
    p.add_argument("system")
    p.add_argument("--max-word-len", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_topfree)

    p = sub.add_parser("invariants", help="invariant unions of cylinders at a fixed depth")
    p.add_argument("system")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_invariants)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except PcxError as exc:
        sys.stderr.write(ser.dumps(ser.error_to_json(exc)))
        return 2
    text = ser.dumps(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
