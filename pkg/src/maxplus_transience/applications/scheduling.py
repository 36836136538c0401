"""Earliest schedules of uniform graphs with binary heights.

An edge ``(i, j, p, h)`` is the restriction ``t(i, n) >= t(j, n - h) + p``
for all ``n >= h``.  Tasks are 0-indexed internally and 1-indexed in files.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError, PreconditionError
from ..graphs import ACYCLIC, Digraph, girth, is_strongly_connected
from ..semiring import NEG_INF, MaxPlusMatrix, MaxPlusVector, mat_mul, mat_vec

__all__ = [
    "UniformGraph",
    "parse_uniform_graph",
    "format_uniform_graph",
    "is_well_formed",
    "add_redundant_restrictions",
    "schedule_matrix",
    "earliest_schedule",
    "direct_earliest_schedule",
    "schedule_violations",
    "random_uniform_graph",
    "EXAMPLE_UNIFORM_GRAPH",
]


@dataclass(frozen=True)
class UniformGraph:
    tasks: int
    edges: tuple  # (src, dst, weight, height), multiset kept as a sorted tuple

    def __post_init__(self):
        if self.tasks < 1:
            raise InputError("a uniform graph needs at least one task")
        edges = []
        for e in self.edges:
            src, dst, p, h = (int(x) for x in e)
            if not (0 <= src < self.tasks and 0 <= dst < self.tasks):
                raise InputError(f"edge {e} out of range for {self.tasks} tasks")
            if p < 1:
                raise InputError(f"edge {e}: weight must be a positive integer")
            if h not in (0, 1):
                raise InputError(f"edge {e}: only heights 0 and 1 are supported")
            edges.append((src, dst, p, h))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    def support(self, height=None) -> Digraph:
        return Digraph(self.tasks, frozenset((i, j) for i, j, _, h in self.edges
                                             if height is None or h == height))


def parse_uniform_graph(text: str) -> UniformGraph:
    """``T E`` then ``E`` lines ``src dst weight height`` (tasks 1-indexed)."""
    lines = [(k + 1, ln.split("#", 1)[0].split()) for k, ln in enumerate(text.splitlines())]
    lines = [(k, toks) for k, toks in lines if toks]
    if not lines:
        raise InputError("empty uniform-graph file")
    k, head = lines[0]
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise InputError(f"line {k}: expected 'T E'")
    tasks, count = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != count:
        raise InputError(f"expected {count} edge lines, found {len(body)}")
    edges = []
    for k, toks in body:
        if len(toks) != 4:
            raise InputError(f"line {k}: expected 'src dst weight height'")
        try:
            src, dst, p, h = (int(t) for t in toks)
        except ValueError:
            raise InputError(f"line {k}: non-integer token") from None
        if not (1 <= src <= tasks and 1 <= dst <= tasks):
            raise InputError(f"line {k}: task out of range 1..{tasks}")
        edges.append((src - 1, dst - 1, p, h))
    return UniformGraph(tasks, tuple(edges))


def format_uniform_graph(g: UniformGraph) -> str:
    lines = [f"{g.tasks} {len(g.edges)}"]
    lines += [f"{i + 1} {j + 1} {p} {h}" for i, j, p, h in g.edges]
    return "\n".join(lines) + "\n"


def is_well_formed(g: UniformGraph) -> bool:
    """Strongly connected and free of closed walks of height 0."""
    return is_strongly_connected(g.support()) and girth(g.support(0)) is ACYCLIC


def add_redundant_restrictions(g: UniformGraph) -> UniformGraph:
    """Add a height-1 copy of every edge that lacks one; the earliest schedule is unchanged."""
    have = {(i, j, p) for i, j, p, h in g.edges if h == 1}
    extra = {(i, j, p, 1) for i, j, p, h in g.edges if (i, j, p) not in have}
    return UniformGraph(g.tasks, g.edges + tuple(sorted(extra)))


def _height_matrix(g: UniformGraph, height: int) -> MaxPlusMatrix:
    rows = [[NEG_INF] * g.tasks for _ in range(g.tasks)]
    for i, j, p, h in g.edges:
        if h == height and (rows[i][j] is NEG_INF or p > rows[i][j]):
            rows[i][j] = Fraction(p)
    return MaxPlusMatrix(rows)


def _star(z: MaxPlusMatrix) -> MaxPlusMatrix:
    """``I + Z + ... + Z^(N-1)`` for a matrix with acyclic graph."""
    n = z.n
    acc = [list(r) for r in MaxPlusMatrix.identity(n).rows]
    p = MaxPlusMatrix.identity(n)
    for _ in range(n - 1):
        p = mat_mul(z, p)
        for i in range(n):
            for j in range(n):
                x = p.rows[i][j]
                if x is not NEG_INF and (acc[i][j] is NEG_INF or x > acc[i][j]):
                    acc[i][j] = x
    return MaxPlusMatrix(acc)


def schedule_matrix(g: UniformGraph):
    """``(A, v)`` with ``A = Z* (x) O`` and ``v_i = max_j Z*[i][j]``.

    ``Z`` holds the height-0 edges and ``O`` the height-1 edges.
    """
    if girth(g.support(0)) is not ACYCLIC:
        raise PreconditionError("not well-formed: the height-0 subgraph has a cycle")
    star = _star(_height_matrix(g, 0))
    a = mat_mul(star, _height_matrix(g, 1))
    v = MaxPlusVector([max(x for x in row if x is not NEG_INF) for row in star.rows])
    return a, v


def earliest_schedule(g: UniformGraph, n_max: int) -> list:
    """Rows ``t(., n)`` for ``n = 0..n_max`` computed as ``A^n (x) v``."""
    if not is_well_formed(g):
        raise PreconditionError("uniform graph is not well-formed")
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    a, x = schedule_matrix(g)
    table = [x.entries]
    for _ in range(n_max):
        x = mat_vec(a, x)
        table.append(x.entries)
    return table


def _height0_order(g: UniformGraph) -> list:
    # topological order with every edge target before its source
    succ = g.support(0).successors()
    order, state = [], [0] * g.tasks

    def visit(u):
        stack = [(u, iter(succ[u]))]
        state[u] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                order.append(node)
                stack.pop()
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))

    for u in range(g.tasks):
        if state[u] == 0:
            visit(u)
    return order


def direct_earliest_schedule(g: UniformGraph, n_max: int) -> list:
    """Pointwise-least nonnegative schedule, built restriction by restriction.

    Iteration ``n`` only depends on iteration ``n - 1`` through height-1
    edges, and height-0 edges are resolved in topological order.
    """
    if girth(g.support(0)) is not ACYCLIC:
        raise PreconditionError("not well-formed: the height-0 subgraph has a cycle")
    order = _height0_order(g)
    out_edges = [[] for _ in range(g.tasks)]
    for i, j, p, h in g.edges:
        out_edges[i].append((j, p, h))
    table = []
    for n in range(n_max + 1):
        row = [None] * g.tasks
        for i in order:
            best = Fraction(0)
            for j, p, h in out_edges[i]:
                if h == 0:
                    best = max(best, row[j] + p)
                elif n >= 1:
                    best = max(best, table[n - 1][j] + p)
            row[i] = best
        table.append(tuple(row))
    return table


def schedule_violations(g: UniformGraph, table) -> list:
    """Restrictions ``(edge, n)`` the table breaks."""
    bad = []
    for n, row in enumerate(table):
        for e in g.edges:
            i, j, p, h = e
            if n >= h and row[i] < table[n - h][j] + p:
                bad.append((e, n))
    return bad


def random_uniform_graph(tasks: int, extra_edges: int = 3, max_weight: int = 5, seed=None,
                         rng: random.Random | None = None) -> UniformGraph:
    """Random well-formed graph: height-0 edges only go from higher to lower
    index under a random relabelling, and a height-1 ring ensures strong connectivity."""
    if tasks < 1:
        raise InputError("need at least one task")
    rng = rng or random.Random(seed)
    perm = list(range(tasks))
    rng.shuffle(perm)
    edges = []
    for k in range(tasks):
        edges.append((perm[k], perm[(k + 1) % tasks], rng.randint(1, max_weight), 1))
    for _ in range(extra_edges):
        a, b = rng.randrange(tasks), rng.randrange(tasks)
        if a == b:
            edges.append((perm[a], perm[a], rng.randint(1, max_weight), 1))
        else:
            lo, hi = sorted((a, b))
            edges.append((perm[hi], perm[lo], rng.randint(1, max_weight), rng.randint(0, 1)))
    return UniformGraph(tasks, tuple(edges))


EXAMPLE_UNIFORM_GRAPH = UniformGraph(7, (
    (1, 0, 1, 0),
    (0, 2, 2, 1),
    (2, 1, 3, 0),
    (2, 6, 2, 1),
    (6, 5, 3, 0),
    (5, 4, 1, 1),
    (4, 3, 5, 0),
    (3, 2, 2, 0),
))
