"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Everything is exact, so every comparison is equality. Runtime limits are part
of the criteria and count towards the verdict.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
import hashlib
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

from pcx.action import NAdicSystem, PathSystem, ResidueSystem
from pcx.crossprod import AlgElem, a_equals, expectation, from_function, l1_norm, residue_s, residue_u, standard_generators
from pcx.graphs import condition_K, every_cycle_has_exit, hereditary_saturated_sets, topfree_bruteforce
from pcx.groups import NAdicElem, g_inv, g_mul
from pcx.paradox import find_witness, verify_proper_infinite, verify_witness, witness_to_isometries
from pcx.space import AdjacencyMatrix, NAdicCell, ResidueCell

from gen import random_alg, random_elem, random_function, random_matrix, random_set
from oracles import condition_k_oracle, cycle_exit_oracle

LINES: list[str] = []


def report(capsys, number: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
    within = limit is None or elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    budget = f"{elapsed:.2f}s" + (f" < {limit:g}s" if limit is not None else "")
    line = f"criterion {number}: {verdict}  {title}  [{budget}]" + (f"  {detail}" if detail else "")
    LINES.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, f"criterion {number} failed: {detail}"
    assert within, f"criterion {number} exceeded its {limit}s budget ({elapsed:.2f}s)"


def _sum(sys_, items):
    out = AlgElem.zero(sys_)
    for x in items:
        out = out + x
    return out


# ---------------------------------------------------------------- 1


def test_criterion_1_cuntz_relations(capsys):
    t0 = time.perf_counter()
    ok = True
    for n in (2, 3):
        sys_ = PathSystem.from_matrix([[1] * n for _ in range(n)])
        g = standard_generators(sys_)
        s = [g[f"s{i}"] for i in range(1, n + 1)]
        one = AlgElem.unit(sys_)
        ok &= a_equals(_sum(sys_, (x * x.star() for x in s)), one)
        ok &= all(a_equals(x.star() * x, one) for x in s)
    report(capsys, 1, "Cuntz relations for n = 2, 3", ok, time.perf_counter() - t0, 1)


# ---------------------------------------------------------------- 2


def test_criterion_2_cuntz_krieger_relations(capsys):
    t0 = time.perf_counter()
    rows = [[1, 1], [1, 0]]
    sys_ = PathSystem.from_matrix(rows)
    g = standard_generators(sys_)
    s = [g["s1"], g["s2"]]
    proj = [x * x.star() for x in s]
    ok = a_equals(_sum(sys_, proj), AlgElem.unit(sys_))
    for i in range(2):
        rhs = _sum(sys_, (proj[j] for j in range(2) if rows[i][j]))
        ok &= a_equals(s[i].star() * s[i], rhs)
    report(capsys, 2, "Cuntz-Krieger relations for [[1,1],[1,0]]", ok, time.perf_counter() - t0, 1)


# ---------------------------------------------------------------- 3


def test_criterion_3_ring_relations(capsys):
    t0 = time.perf_counter()
    R = ResidueSystem()
    s, u = (lambda m: residue_s(R, m)), (lambda n: residue_u(R, n))
    ok = a_equals(s(2) * s(3), s(6))
    ok &= a_equals(u(1) * u(2), u(3))
    ok &= a_equals(s(2) * u(1), u(2) * s(2))
    ok &= a_equals(_sum(R, (u(l) * s(2) * s(2).star() * u(-l) for l in range(2))), AlgElem.unit(R))
    report(capsys, 3, "ring relations over Z", ok, time.perf_counter() - t0, 1)


# ---------------------------------------------------------------- 4


def _paradox_corpus():
    corpus = []
    for rows in ([[1, 1], [1, 0]], [[1, 1], [1, 1]]):
        sys_ = PathSystem.from_matrix(rows)
        seen = set()
        for d in range(4):
            for c in sys_.space.cells_at(d):
                s = sys_.space.cell_set(c)
                if s.cells not in seen:  # forced continuations make some cylinders equal
                    seen.add(s.cells)
                    corpus.append((sys_, s))
    dy = NAdicSystem.of(2)
    corpus += [(dy, dy.space.cell_set(NAdicCell(p, k))) for k in range(4) for p in range(2**k)]
    R = ResidueSystem()
    corpus += [(R, R.space.cell_set(ResidueCell(a, c))) for a in range(1, 7) for c in range(a)]
    return corpus


def test_criterion_4_paradox_pipeline(capsys):
    t0 = time.perf_counter()
    corpus = _paradox_corpus()
    bad = []
    for sys_, V in corpus:
        w = find_witness(sys_, V)
        if not (w.V == V and verify_witness(sys_, w).passed):
            bad.append((sys_.model, V, "witness"))
            continue
        if not verify_proper_infinite(sys_, *witness_to_isometries(sys_, w)).passed:
            bad.append((sys_.model, V, "lift"))
    ok = len(corpus) >= 30 and not bad
    report(capsys, 4, "paradox find/verify/lift soundness", ok, time.perf_counter() - t0, 30, f"{len(corpus)} sets, {len(bad)} failures")


# ---------------------------------------------------------------- 5


def test_criterion_5_paper_relations(capsys):
    t0 = time.perf_counter()
    ok = True
    for n in (2, 3):
        sys_ = NAdicSystem.of(n)
        X = sys_.space.whole()
        for k in range(1, 4):
            shift = NAdicElem(F(-1, n**k), 0, n)
            for p in range(1, n**k):
                img = sys_.apply(shift, sys_.space.cell_set(NAdicCell(p, k)))
                ok &= img == sys_.space.cell_set(NAdicCell(p - 1, k))
            ok &= sys_.apply(NAdicElem(F(0), -k, n), sys_.space.cell_set(NAdicCell(0, k))) == X
    dy = NAdicSystem.of(2)
    ok &= dy.apply(NAdicElem(F(-1, 2), 0, 2), dy.space.cell_set(NAdicCell(1, 1))).cells == (NAdicCell(0, 1),)
    ok &= dy.apply(NAdicElem(F(0), -1, 2), dy.space.cell_set(NAdicCell(0, 1))) == dy.space.whole()
    R = ResidueSystem()
    for s in (2, 3):
        for w in range(1, 5):
            # u in R = Z: for u outside Z + (w) the left side is empty while su may be integral
            for u in range(-8, 9):
                X_uw = R.range(R.elem(u, w))
                ok &= R.apply(R.elem(0, s), X_uw) == R.range(R.elem(s * u, s * w))
                ok &= R.apply(R.elem(s, 1), X_uw) == R.range(R.elem(s + u, w))
    report(capsys, 5, "n-adic shift/scale and residue relations", ok, time.perf_counter() - t0, None)


# ---------------------------------------------------------------- 6


def _action_laws(sys_, rng) -> bool:
    t, s = random_elem(rng, sys_), random_elem(rng, sys_)
    S = random_set(rng, sys_)
    if sys_.apply(sys_.identity(), S) != S:
        return False
    St = S & sys_.domain(t)
    if sys_.apply(g_inv(t), sys_.apply(t, St)) != St:
        return False
    # the part of S that s moves into the domain of t
    mid = sys_.apply(s, S & sys_.domain(s)) & sys_.domain(t)
    U = sys_.apply(g_inv(s), mid)
    ts = g_mul(t, s)
    return U <= sys_.domain(ts) and sys_.apply(ts, U) == sys_.apply(t, sys_.apply(s, U))


def test_criterion_6_partial_action_axioms(capsys):
    t0 = time.perf_counter()
    rng = random.Random(6)
    models = {
        "pathspace": [PathSystem.from_matrix(r) for r in ([[1, 1], [1, 0]], [[1, 1], [1, 1]], [[0, 1, 0], [0, 1, 1], [1, 0, 1]])],
        "nadic": [NAdicSystem.of(2), NAdicSystem.of(3)],
        "residue": [ResidueSystem(), ResidueSystem(True)],
    }
    counts, bad = {}, 0
    for name, systems in models.items():
        counts[name] = 0
        for i in range(1000):
            bad += not _action_laws(systems[i % len(systems)], rng)
            counts[name] += 1
    ok = bad == 0 and min(counts.values()) >= 1000
    report(capsys, 6, "identity, inverse and extension laws", ok, time.perf_counter() - t0, 30, f"{counts}, {bad} failures")


# ---------------------------------------------------------------- 7


def _algebra_laws(sys_, rng) -> bool:
    x, y, z = (random_alg(rng, sys_, 4) for _ in range(3))
    whole = sys_.space.whole()
    a = from_function(sys_, random_function(rng, sys_, whole))
    b = from_function(sys_, random_function(rng, sys_, whole))
    checks = (
        a_equals((x * y) * z, x * (y * z)),
        a_equals((x * y).star(), y.star() * x.star()),
        a_equals(x.star().star(), x),
        l1_norm(x * y) <= l1_norm(x) * l1_norm(y),
        a_equals(from_function(sys_, expectation(a * x * b)), a * from_function(sys_, expectation(x)) * b),
        expectation(x.star() * x).is_zero() == x.is_zero(),
        all(v > 0 for v, _ in expectation(x.star() * x).levels),
    )
    return all(checks)


def test_criterion_7_algebra_laws(capsys):
    t0 = time.perf_counter()
    rng = random.Random(7)
    systems = [
        PathSystem.from_matrix([[1, 1], [1, 0]]),
        PathSystem.from_matrix([[1, 1], [1, 1]]),
        NAdicSystem.of(2),
        ResidueSystem(),
    ]
    elements, bad = 0, 0
    for i in range(170):
        bad += not _algebra_laws(systems[i % len(systems)], rng)
        elements += 3
    ok = bad == 0 and elements >= 500
    report(capsys, 7, "*-algebra and expectation laws", ok, time.perf_counter() - t0, 30, f"{elements} elements, {bad} failures")


# ---------------------------------------------------------------- 8


def test_criterion_8_graph_checks(capsys):
    t0 = time.perf_counter()
    rng = random.Random(8)
    bad = []
    total = 0
    for i in range(1000):
        n = 1 + i % 4
        rows = random_matrix(rng, n)
        a = AdjacencyMatrix.from_lists(rows)
        k, ex = condition_K(a).holds, every_cycle_has_exit(a).holds
        tf = topfree_bruteforce(PathSystem.from_matrix(rows), 2 * n, 2 * n).holds
        if k != condition_k_oracle(rows) or ex != cycle_exit_oracle(rows) or tf != ex or (k and not ex):
            bad.append(rows)
        total += 1
    hs = hereditary_saturated_sets(AdjacencyMatrix.from_lists([[1, 1], [0, 1]]))
    ok = not bad and total >= 1000 and hs == [(), (2,), (1, 2)]
    report(capsys, 8, "graph checks against brute force", ok, time.perf_counter() - t0, 60, f"{total} matrices, {len(bad)} disagreements")


# ---------------------------------------------------------------- 9


def _cli(args, cwd, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run([sys.executable, "-m", "pcx", *args], cwd=cwd, env=env, capture_output=True)
    return proc.returncode, hashlib.sha256(proc.stdout + proc.stderr).hexdigest()


def test_criterion_9_determinism(tmp_path, capsys):
    t0 = time.perf_counter()
    files = {
        "golden.json": {"model": "pathspace", "matrix": [[1, 1], [1, 0]]},
        "loop.json": {"model": "pathspace", "matrix": [[1]]},
        "dyadic.json": {"model": "nadic", "n": 2},
        "res.json": {"model": "residue", "ring": "Z"},
        "vg.json": {"model": "pathspace", "cells": [{"w": "1.2"}, {"w": "2"}, {"w": "1.1.1"}]},
        "vd.json": {"model": "nadic", "cells": [{"p": 1, "k": 2}, {"p": 5, "k": 3}, {"p": 7, "k": 4}]},
        "vr.json": {"model": "residue", "cells": [{"a": 4, "c": 1}, {"a": 6, "c": 2}, {"a": 9, "c": 0}]},
    }
    for name, obj in files.items():
        (tmp_path / name).write_text(json.dumps(obj))
    finds = [("golden.json", "vg.json"), ("dyadic.json", "vd.json"), ("res.json", "vr.json")]
    commands = []
    for sys_file, set_file in finds:
        commands.append(["paradox", "find", sys_file, "--set", set_file])
        commands.append(["paradox", "find", sys_file, "--set", set_file, "--workers", "4"])
        commands.append(["-o", f"w_{sys_file}", "paradox", "find", sys_file, "--set", set_file])
    commands += [
        ["verify-relations", "golden.json"],
        ["verify-relations", "res.json"],
        ["graph", "check", "golden.json"],
        ["graph", "check", "loop.json"],
        ["topfree", "loop.json", "--max-word-len", "2", "--depth", "2"],
        ["invariants", "golden.json", "--depth", "2"],
    ]
    # the -o runs above must come first so the witness files exist
    first = [c for c in commands if c[0] == "-o"]
    for c in first:
        _cli(c, tmp_path, 0)
    for sys_file, _ in finds:
        commands.append(["paradox", "verify", sys_file, f"w_{sys_file}"])
        commands.append(["paradox", "lift", sys_file, f"w_{sys_file}"])
    differing = []
    for cmd in commands:
        runs = {_cli(cmd, tmp_path, seed) for seed in (1, 2, 3)}
        if len(runs) != 1:
            differing.append(" ".join(cmd))
        elif "paradox" in cmd and next(iter(runs))[0] != 0:
            differing.append(" ".join(cmd) + " (nonzero exit)")
    # parallel and sequential search give the same witness
    for sys_file, set_file in finds:
        seq = _cli(["paradox", "find", sys_file, "--set", set_file], tmp_path, 5)
        par = _cli(["paradox", "find", sys_file, "--set", set_file, "--workers", "4"], tmp_path, 5)
        if seq != par:
            differing.append(f"workers on {sys_file}")
    ok = not differing
    report(capsys, 9, "byte-identical CLI output over 3 runs", ok, time.perf_counter() - t0, None, f"{len(commands)} commands x 3 runs" + (f", differing: {differing}" if differing else ""))


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_criterion_"):
            continue
        try:
            if name.endswith("determinism"):
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d), None)
            else:
                fn(None)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
