"""Graph checks for the path model: condition (K), exits of cycles, fixed
cylinders, hereditary saturated vertex sets and invariant clopen sets.

Vertices are numbered from 1 and a path ``v_0 v_1 ... v_k`` is a vertex tuple
with ``A(v_j, v_{j+1}) = 1``. A loop based at ``v`` starts and ends at ``v``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

import networkx as nx

from .action import PathSystem
from .errors import ModelMismatch, TooLarge
from .groups import FreeWord, positive_negative_split
from .space import AdjacencyMatrix, ClopenSet, PathCell, max_cells

MAX_HS_VERTICES = 20
MAX_INVARIANT_DEPTH = 6

Path = tuple[int, ...]


def _graph(a: AdjacencyMatrix) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(1, a.n + 1))
    g.add_edges_from((i, j) for i in range(1, a.n + 1) for j in a.successors(i))
    return g


def _component_of(a: AdjacencyMatrix) -> dict[int, frozenset]:
    comp = {}
    for scc in nx.strongly_connected_components(_graph(a)):
        s = frozenset(scc)
        for v in s:
            comp[v] = s
    return comp


def _bfs_path(a: AdjacencyMatrix, start: int, goal, allowed) -> Optional[Path]:
    """Shortest path from ``start`` (one step at least) to a vertex in ``goal``."""
    prev = {}
    queue = deque()
    for j in a.successors(start):
        if j in allowed and j not in prev:
            prev[j] = start
            queue.append(j)
    while queue:
        v = queue.popleft()
        if v in goal:
            out = [v]
            cur = v
            while True:
                cur = prev[cur]
                out.append(cur)
                if cur == start:
                    break
            return tuple(reversed(out))
        for j in a.successors(v):
            if j in allowed and j not in prev:
                prev[j] = v
                queue.append(j)
    return None


def shortest_loop(a: AdjacencyMatrix, v: int) -> Optional[Path]:
    """Shortest loop at ``v`` (BFS with neighbours in increasing order)."""
    return _bfs_path(a, v, {v}, set(range(1, a.n + 1)))


def _path_to(a: AdjacencyMatrix, b: int, targets: set, allowed) -> Path:
    """Shortest path from ``b`` to ``targets``, possibly of length 0."""
    if b in targets:
        return (b,)
    return _bfs_path(a, b, targets, allowed)


def two_loops(a: AdjacencyMatrix, v: int) -> Optional[tuple[Path, Path]]:
    """Two distinct first-return loops at ``v``, or None.

    The first is the shortest loop ``c``. The second leaves ``c`` along the
    first edge (in vertex order) that is not an edge of ``c`` and stays in the
    strongly connected component, returns to ``c`` by a shortest path and
    follows ``c`` home. None means ``v`` lies on no loop or its component is
    the single cycle ``c``.
    """
    comp = _component_of(a)[v]
    c = shortest_loop(a, v)
    if c is None:
        return None
    on_c = c[:-1]
    c_edges = set(zip(c, c[1:]))
    for i, x in enumerate(on_c):
        for b in a.successors(x):
            if b not in comp or (x, b) in c_edges:
                continue
            back = _path_to(a, b, set(on_c), comp)
            j = on_c.index(back[-1])
            tail = c[j + 1 :] if j != 0 else ()
            return c, c[: i + 1] + back + tail
    return None


@dataclass(frozen=True)
class KResult:
    holds: bool
    loops: dict = field(default_factory=dict)  # vertex -> (beta', beta'') on success
    culprit: Optional[int] = None
    culprit_loop: Optional[Path] = None


def condition_K(a: AdjacencyMatrix) -> KResult:
    """Every vertex on a loop has two first-return loops.

    Checked per strongly connected component: a vertex fails exactly when its
    component contains a cycle and is nothing but that one simple cycle.
    """
    comp = _component_of(a)
    loops = {}
    for v in range(1, a.n + 1):
        cyclic = len(comp[v]) > 1 or a(v, v)
        if not cyclic:
            continue
        pair = two_loops(a, v)
        if pair is None:
            return KResult(False, loops, v, shortest_loop(a, v))
        loops[v] = pair
    return KResult(True, loops)


@dataclass(frozen=True)
class ExitResult:
    holds: bool
    cycle: Optional[Path] = None


def every_cycle_has_exit(a: AdjacencyMatrix) -> ExitResult:
    """False iff some cycle runs only through vertices of out-degree 1."""
    single = {v for v in range(1, a.n + 1) if a.out_degree(v) == 1}
    for v in sorted(single):
        seen = []
        x = v
        while x in single and x not in seen:
            seen.append(x)
            x = a.successors(x)[0]
        if x in seen:
            cyc = seen[seen.index(x) :]
            k = cyc.index(min(cyc))
            cyc = cyc[k:] + cyc[:k]
            return ExitResult(False, tuple(cyc) + (cyc[0],))
    return ExitResult(True)


# --------------------------------------------------------------------------


def reduced_words(n: int, max_len: int) -> Iterator[FreeWord]:
    """Nontrivial reduced words of length <= max_len, shortest first, then lexicographic."""
    letters = sorted((x for i in range(1, n + 1) for x in (i, -i)), key=lambda x: (abs(x), x < 0))
    layer: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        for w in nxt:
            yield FreeWord(w)
        layer = nxt


@dataclass(frozen=True)
class TopFreeResult:
    holds: bool
    word: Optional[FreeWord] = None
    cell: Optional[PathCell] = None


def topfree_bruteforce(sys: PathSystem, max_word_len: int, depth: int) -> TopFreeResult:
    """Search for a cylinder of depth <= ``depth`` fixed pointwise by some ``theta_t``.

    A cylinder is pointwise fixed iff it is a single point and ``theta_t``
    maps it onto itself, so only singleton cylinders are tried.
    """
    if not isinstance(sys, PathSystem):
        raise ModelMismatch("topfree_bruteforce needs a path system")
    sp = sys.space
    singles = [c for d in range(depth + 1) for c in sp.cells_at(d) if sp.is_singleton(c)]
    if not singles:
        return TopFreeResult(True)
    sets = [(c, sp.cell_set(c)) for c in singles]
    for t in reduced_words(sys.n, max_word_len):
        if positive_negative_split(t) is None:
            continue
        dom = sys.domain(t)
        for c, s in sets:
            if s <= dom and sys.apply(t, s) == s:
                return TopFreeResult(False, t, c)
    return TopFreeResult(True)


def hereditary_saturated_sets(a: AdjacencyMatrix) -> list[tuple[int, ...]]:
    """All hereditary saturated vertex sets, sorted by size then lexicographically."""
    n = a.n
    if n > MAX_HS_VERTICES:
        raise TooLarge(f"hereditary_saturated_sets is limited to {MAX_HS_VERTICES} vertices, got {n}")
    succ = [sum(1 << (j - 1) for j in a.successors(v)) for v in range(1, n + 1)]
    out = []
    for h in range(1 << n):
        ok = True
        for v in range(n):
            inside = bool((h >> v) & 1)
            closed = succ[v] & ~h == 0
            if inside != closed:  # hereditary when inside, saturated when not
                ok = False
                break
        if ok:
            out.append(tuple(v + 1 for v in range(n) if (h >> v) & 1))
    out.sort(key=lambda s: (len(s), s))
    return out


def invariant_clopen_sets(sys: PathSystem, depth: int) -> list[ClopenSet]:
    """Unions ``S`` of depth-``depth`` cylinders with ``theta_g(S n dom g)`` inside ``S``
    for every generator and inverse.

    A leaf ``c`` forces ``d`` into ``S`` when some ``theta_g`` moves part of ``Z(c)``
    into ``Z(d)``; the invariant sets are exactly the sets closed under these
    implications, i.e. the unions of principal closures.
    """
    if not isinstance(sys, PathSystem):
        raise ModelMismatch("invariant_clopen_sets needs a path system")
    if depth > MAX_INVARIANT_DEPTH or depth < 0:
        raise TooLarge(f"depth must be between 0 and {MAX_INVARIANT_DEPTH}, got {depth}")
    sp = sys.space
    leaves = list(sp.cells_at(depth))
    index = {c: i for i, c in enumerate(leaves)}
    gens = []
    for g in sys.generators():
        gens += [g, FreeWord((-g.letters[0],))]
    forces: list[set[int]] = [set() for _ in leaves]
    for g in gens:
        dom = sys.domain(g)
        for c in leaves:
            part = sp.cell_set(c) & dom
            if part.is_empty():
                continue
            img = sys.apply(g, part)
            for d in img.refine(max(depth, img.granularity())):
                forces[index[c]].add(index[PathCell(d.word[:depth])])
    closures = set()
    for i in range(len(leaves)):
        seen = {i}
        stack = [i]
        while stack:
            for j in forces[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        closures.add(frozenset(seen))
    sets = {frozenset()}
    for k in sorted(closures, key=sorted):
        sets |= {s | k for s in sets}
        if len(sets) > max_cells():
            raise TooLarge("too many invariant sets")
    out = [sp.set(leaves[i] for i in s) for s in sets]
    out.sort(key=lambda s: tuple(c.word for c in s.cells))
    return out


@dataclass(frozen=True)
class GraphReport:
    zero_rows: bool
    k: KResult
    exits: ExitResult
    hereditary_saturated: list

    @property
    def passed(self) -> bool:
        return not self.zero_rows and self.k.holds and self.exits.holds


def graph_report(a: AdjacencyMatrix) -> GraphReport:
    zero_rows = any(not any(r) for r in a.rows)
    hs = hereditary_saturated_sets(a) if a.n <= MAX_HS_VERTICES else []
    return GraphReport(zero_rows, condition_K(a), every_cycle_has_exit(a), hs)
