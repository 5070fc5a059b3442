import itertools
import random

import pytest

from pcx.action import NAdicSystem, PathSystem
from pcx.errors import InvalidMatrix, ModelMismatch, TooLarge
from pcx.graphs import (
    condition_K,
    every_cycle_has_exit,
    graph_report,
    hereditary_saturated_sets,
    invariant_clopen_sets,
    reduced_words,
    topfree_bruteforce,
)
from pcx.groups import FreeWord
from pcx.space import AdjacencyMatrix, PathCell

from gen import random_matrix
from oracles import (
    condition_k_oracle,
    cycle_exit_oracle,
    hereditary_saturated_oracle,
    invariant_sets_oracle,
    topfree_oracle,
)


def A(rows):
    return AdjacencyMatrix.from_lists(rows)


def test_condition_k_examples():
    k = condition_K(A([[1, 1], [1, 0]]))
    assert k.holds
    assert k.loops[1] == ((1, 1), (1, 2, 1))
    bad = condition_K(A([[1]]))
    assert not bad.holds and bad.culprit == 1 and bad.culprit_loop == (1, 1)
    assert not condition_K(A([[0, 1], [1, 0]])).holds


def test_exit_examples():
    assert every_cycle_has_exit(A([[1, 1], [1, 0]])).holds
    r = every_cycle_has_exit(A([[1]]))
    assert not r.holds and r.cycle == (1, 1)
    assert not every_cycle_has_exit(A([[1, 0], [0, 1]])).holds


def test_topfree_examples():
    assert topfree_bruteforce(PathSystem.from_matrix([[1, 1], [1, 0]]), 4, 4).holds
    r = topfree_bruteforce(PathSystem.from_matrix([[1]]), 1, 1)
    assert not r.holds and r.word == FreeWord.gen(1)
    assert topfree_bruteforce(PathSystem.from_matrix([[1]]), 0, 3).holds
    with pytest.raises(ModelMismatch):
        topfree_bruteforce(NAdicSystem.of(2), 1, 1)


def test_hereditary_saturated_examples():
    assert hereditary_saturated_sets(A([[1, 1], [0, 1]])) == [(), (2,), (1, 2)]
    assert hereditary_saturated_sets(A([[1, 1], [1, 1]])) == [(), (1, 2)]
    assert hereditary_saturated_sets(A([[1]])) == [(), (1,)]
    with pytest.raises(TooLarge):
        hereditary_saturated_sets(A([[1] * 21 for _ in range(21)]))


def test_invariant_examples():
    full = PathSystem.from_matrix([[1, 1], [1, 1]])
    sets = invariant_clopen_sets(full, 1)
    assert sets == [full.space.empty(), full.space.whole()]
    # Z(2) is not invariant under [[1,1],[0,1]]: g_1 maps part of Z(2) into Z(1)
    tail = PathSystem.from_matrix([[1, 1], [0, 1]])
    z2 = tail.space.cell_set(PathCell((2,)))
    assert tail.apply(FreeWord.gen(1), z2).cells == (PathCell((1, 2)),)
    assert invariant_clopen_sets(tail, 1) == [tail.space.empty(), tail.space.whole()]
    with pytest.raises(TooLarge):
        invariant_clopen_sets(full, 7)


def test_zero_rows_rejected():
    with pytest.raises(InvalidMatrix):
        A([[0, 0], [1, 1]])


def test_report():
    r = graph_report(A([[1]]))
    assert not r.passed and not r.k.holds and not r.exits.holds and r.hereditary_saturated == [(), (1,)]
    assert graph_report(A([[1, 1], [1, 0]])).passed


def test_reduced_words_order():
    words = [w.letters for w in reduced_words(1, 2)]
    assert words == [(1,), (-1,), (1, 1), (-1, -1)]
    assert sum(1 for _ in reduced_words(2, 3)) == 4 + 12 + 36


def _is_loop(rows, v, loop):
    return (
        loop[0] == v == loop[-1]
        and len(loop) > 1
        and v not in loop[1:-1]
        and all(rows[a - 1][b - 1] for a, b in zip(loop, loop[1:]))
    )


def _all_matrices(n):
    for bits in itertools.product((0, 1), repeat=n * n):
        rows = [list(bits[i * n : (i + 1) * n]) for i in range(n)]
        if all(any(r) for r in rows):
            yield rows


def test_exhaustive_small_matrices():
    for n in (1, 2, 3):
        for rows in _all_matrices(n):
            a = A(rows)
            k = condition_K(a)
            assert k.holds == condition_k_oracle(rows), rows
            assert every_cycle_has_exit(a).holds == cycle_exit_oracle(rows), rows
            assert hereditary_saturated_sets(a) == hereditary_saturated_oracle(rows)
            if k.holds:
                assert every_cycle_has_exit(a).holds
                for v, (b1, b2) in k.loops.items():
                    assert _is_loop(rows, v, b1) and _is_loop(rows, v, b2) and b1 != b2


def test_random_four_vertex_matrices():
    rng = random.Random(67)
    for _ in range(400):
        rows = random_matrix(rng, 4)
        a = A(rows)
        assert condition_K(a).holds == condition_k_oracle(rows), rows
        assert every_cycle_has_exit(a).holds == cycle_exit_oracle(rows), rows


def test_exit_evidence_is_a_cycle_without_exit():
    rng = random.Random(71)
    for _ in range(300):
        rows = random_matrix(rng, rng.randint(1, 4))
        r = every_cycle_has_exit(A(rows))
        if not r.holds:
            assert _is_loop(rows, r.cycle[0], r.cycle)
            assert all(sum(rows[v - 1]) == 1 for v in r.cycle)


def test_topfree_matches_oracle_and_exits():
    for n in (1, 2):
        for rows in _all_matrices(n):
            sys = PathSystem.from_matrix(rows)
            got = topfree_bruteforce(sys, 2 * n, 2 * n)
            assert got.holds == topfree_oracle(rows, 2 * n, 2 * n), rows
            assert got.holds == every_cycle_has_exit(sys.matrix).holds, rows
            if not got.holds:
                s = sys.space.cell_set(got.cell)
                assert sys.apply(got.word, s) == s


@pytest.mark.parametrize("rows", [[[1, 1], [1, 0]], [[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, 1, 0], [0, 1, 1], [1, 0, 1]]])
def test_invariant_sets_match_oracle(rows):
    sys = PathSystem.from_matrix(rows)
    for depth in (1, 2):
        got = {frozenset(tuple(c.word) for c in s.refine(depth)) for s in invariant_clopen_sets(sys, depth)}
        assert got == set(invariant_sets_oracle(rows, depth))


def test_invariant_sets_give_hereditary_saturated_sets():
    # for invariant S, the vertices whose whole cylinder lies in S form a hereditary saturated set
    rng = random.Random(73)
    for _ in range(40):
        rows = random_matrix(rng, rng.randint(1, 3))
        sys = PathSystem.from_matrix(rows)
        hs = set(hereditary_saturated_sets(sys.matrix))
        for s in invariant_clopen_sets(sys, 2):
            h = tuple(v for v in range(1, len(rows) + 1) if sys.space.cell_set(PathCell((v,))) <= s)
            assert h in hs


def test_invariant_sets_always_contain_extremes():
    rng = random.Random(79)
    for _ in range(20):
        sys = PathSystem.from_matrix(random_matrix(rng, rng.randint(1, 3)))
        sets = invariant_clopen_sets(sys, 2)
        assert sets[0].is_empty() and sys.space.whole() in sets
