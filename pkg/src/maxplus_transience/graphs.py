"""Directed graphs and their structural parameters.

Nodes are ``0..N-1`` internally.  The text format is 1-indexed.
"""

from __future__ import annotations

import enum
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import reduce

from .errors import InputError
from .semiring import NEG_INF, MaxPlusMatrix

__all__ = [
    "ACYCLIC",
    "Digraph",
    "graph_of_matrix",
    "strongly_connected_components",
    "is_strongly_connected",
    "is_irreducible",
    "girth",
    "cyclicity",
    "component_cyclicity",
    "parse_digraph",
    "format_digraph",
]


class _Acyclic(enum.Enum):
    ACYCLIC = "acyclic"

    def __repr__(self):
        return "ACYCLIC"


#: Returned by :func:`girth` for graphs without any nonempty cycle.
ACYCLIC = _Acyclic.ACYCLIC


@dataclass(frozen=True)
class Digraph:
    node_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.node_count < 1:
            raise InputError("a graph needs at least one node")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (0 <= i < self.node_count and 0 <= j < self.node_count):
                raise InputError(f"edge ({i}, {j}) out of range for {self.node_count} nodes")
        object.__setattr__(self, "edges", edges)

    def successors(self) -> list:
        succ = [[] for _ in range(self.node_count)]
        for i, j in sorted(self.edges):
            succ[i].append(j)
        return succ

    def predecessors(self) -> list:
        pred = [[] for _ in range(self.node_count)]
        for i, j in sorted(self.edges):
            pred[j].append(i)
        return pred

    def induced(self, nodes) -> "Digraph":
        """Subgraph on ``nodes``, relabelled ``0..len(nodes)-1`` in sorted order."""
        nodes = sorted(nodes)
        index = {u: k for k, u in enumerate(nodes)}
        return Digraph(
            len(nodes),
            frozenset((index[i], index[j]) for i, j in self.edges if i in index and j in index),
        )


def graph_of_matrix(a: MaxPlusMatrix) -> Digraph:
    return Digraph(a.n, frozenset((i, j) for i, j, _ in a.edges()))


def strongly_connected_components(g: Digraph) -> list:
    """Tarjan's algorithm, iterative.

    Returns a list of sorted node lists in reverse topological order of the
    condensation (sink components first).
    """
    succ = g.successors()
    index = {}
    low = {}
    on_stack = set()
    stack = []
    result = []
    counter = 0
    for root in range(g.node_count):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for k in range(pos, len(succ[v])):
                w = succ[v][k]
                if w not in index:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return result


def is_strongly_connected(g: Digraph) -> bool:
    return len(strongly_connected_components(g)) == 1


def is_irreducible(a: MaxPlusMatrix) -> bool:
    return is_strongly_connected(graph_of_matrix(a))


def girth(g: Digraph):
    """Length of a shortest nonempty cycle, or ``ACYCLIC``."""
    succ = g.successors()
    best = None
    for s in range(g.node_count):
        if (s, s) in g.edges:
            return 1
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] + 1 >= best:
                break
            for w in succ[u]:
                if w == s:
                    length = dist[u] + 1
                    if best is None or length < best:
                        best = length
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    return ACYCLIC if best is None else best


def component_cyclicity(g: Digraph, nodes) -> int:
    """gcd of cycle lengths inside one strongly connected node set.

    Uses a BFS levelling: the gcd of ``level(u) + 1 - level(v)`` over the
    component's edges.  A single node without a self-loop gets 1.
    """
    nodes = set(nodes)
    start = min(nodes)
    succ = g.successors()
    level = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in succ[u]:
            if w in nodes and w not in level:
                level[w] = level[u] + 1
                queue.append(w)
    gcd = 0
    for u, w in g.edges:
        if u in nodes and w in nodes:
            gcd = math.gcd(gcd, abs(level[u] + 1 - level[w]))
    return gcd or 1


def cyclicity(g: Digraph) -> int:
    """gcd of cycle lengths for a strongly connected graph, lcm over components otherwise."""
    values = [component_cyclicity(g, comp) for comp in strongly_connected_components(g)]
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


def parse_digraph(text: str) -> Digraph:
    """Text format: ``N E`` then ``E`` lines ``src dst`` (1-indexed)."""
    lines = [
        (k, line) for k, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise InputError("empty graph file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(re.fullmatch(r"\d+", p) for p in parts):
        raise InputError(f"line {lineno}, column 1: expected 'N E' header")
    n, e = int(parts[0]), int(parts[1])
    if n < 1:
        raise InputError(f"line {lineno}, column 1: node count must be positive")
    body = lines[1:]
    if len(body) != e:
        raise InputError(f"expected {e} edge lines, found {len(body)}")
    edges = set()
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2 or not all(re.fullmatch(r"\d+", p) for p in parts):
            raise InputError(f"line {lineno}, column 1: expected 'src dst'")
        i, j = int(parts[0]), int(parts[1])
        for col, x in ((1, i), (line.index(parts[1]) + 1, j)):
            if not 1 <= x <= n:
                raise InputError(f"line {lineno}, column {col}: node {x} out of range 1..{n}")
        if (i - 1, j - 1) in edges:
            raise InputError(f"line {lineno}, column 1: duplicate edge {i} {j}")
        edges.add((i - 1, j - 1))
    return Digraph(n, frozenset(edges))


def format_digraph(g: Digraph) -> str:
    lines = [f"{g.node_count} {len(g.edges)}"]
    lines += [f"{i + 1} {j + 1}" for i, j in sorted(g.edges)]
    return "\n".join(lines) + "\n"
