"""Walks, cycle patterns and the (d, k)-reduction.

A walk is stored as its start node and edge tuple; ``nodes`` gives the
position sequence ``v_0 .. v_L``.  A cycle pattern is a tuple of disjoint
position ranges ``(a, b)`` with ``a < b``, each the edges ``a .. b-1`` of
the host walk forming an elementary cycle (``v_a == v_b`` and no other
repetition in between).  Every elementary subcycle starting at position
``a`` ends at the first return to ``v_a``, so a walk of length ``L`` has at
most ``L`` candidate cycles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ResourceError
from .semiring import NEG_INF, MaxPlusMatrix, MaxPlusVector

__all__ = [
    "Walk",
    "CyclePattern",
    "parse_walk",
    "format_walk",
    "cycle_candidates",
    "remove_cycle_pattern",
    "find_removable_pattern",
    "reduce_walk",
    "reduction_length_bound",
    "max_preserving_cycle_count",
    "iter_cycle_patterns",
    "certify_fixpoint",
    "walk_weight",
]

DEFAULT_LENGTH_CAP = 10_000


@dataclass(frozen=True)
class Walk:
    start: int
    edges: tuple = ()

    def __post_init__(self):
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        cur = self.start
        for pos, (i, j) in enumerate(edges):
            if i != cur:
                raise InputError(f"edge {pos} starts at {i}, expected {cur}")
            cur = j
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_nodes(cls, nodes) -> "Walk":
        nodes = list(nodes)
        if not nodes:
            raise InputError("a walk needs at least its start node")
        return cls(nodes[0], tuple(zip(nodes, nodes[1:])))

    @property
    def end(self) -> int:
        return self.edges[-1][1] if self.edges else self.start

    @property
    def nodes(self) -> tuple:
        return (self.start,) + tuple(j for _, j in self.edges)

    def __len__(self):
        return len(self.edges)

    def contains(self, k: int) -> bool:
        return k in self.nodes


@dataclass(frozen=True)
class CyclePattern:
    ranges: tuple = ()

    @property
    def length(self) -> int:
        return sum(b - a for a, b in self.ranges)

    def __len__(self):
        return len(self.ranges)


_EDGE = re.compile(r"^(-?\d+)->(-?\d+)$")


def parse_walk(text: str) -> Walk:
    """Parse ``start: i->j j->k ...``."""
    head, sep, tail = text.partition(":")
    if not sep or not head.strip().lstrip("-").isdigit():
        raise InputError(f"malformed walk literal {text!r}")
    edges = []
    for tok in tail.split():
        m = _EDGE.match(tok)
        if not m:
            raise InputError(f"malformed edge token {tok!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    return Walk(int(head), tuple(edges))


def format_walk(w: Walk) -> str:
    return f"{w.start}: " + " ".join(f"{i}->{j}" for i, j in w.edges)


def cycle_candidates(w: Walk) -> dict:
    """Map start position ``a`` to end position ``b`` of the elementary subcycle at ``a``."""
    nodes = w.nodes
    out = {}
    for a in range(len(nodes) - 1):
        seen = {nodes[a]}
        for b in range(a + 1, len(nodes)):
            x = nodes[b]
            if x == nodes[a]:
                out[a] = b
                break
            if x in seen:
                break
            seen.add(x)
    return out


def _validate(w: Walk, s: CyclePattern):
    nodes = w.nodes
    cands = cycle_candidates(w)
    prev = 0
    for a, b in s.ranges:
        if not 0 <= a < b <= len(w):
            raise InputError(f"range ({a}, {b}) is empty or outside the walk")
        if a < prev:
            raise InputError(f"range ({a}, {b}) overlaps or is out of order")
        if nodes[a] != nodes[b]:
            raise InputError(f"range ({a}, {b}) is not closed")
        if cands.get(a) != b:
            raise InputError(f"range ({a}, {b}) is not an elementary cycle")
        prev = b


def remove_cycle_pattern(w: Walk, s: CyclePattern) -> Walk:
    _validate(w, s)
    drop = set()
    for a, b in s.ranges:
        drop.update(range(a, b))
    return Walk(w.start, tuple(e for pos, e in enumerate(w.edges) if pos not in drop))


def _kept_nodes(w: Walk, s: CyclePattern) -> set:
    nodes = w.nodes
    removed = set()
    for a, b in s.ranges:
        removed.update(range(a + 1, b + 1))
    return {nodes[p] for p in range(len(nodes)) if p not in removed}


def find_removable_pattern(w: Walk, d: int, k: int):
    """A nonempty cycle pattern of maximal total length that is ``0 mod d`` and
    keeps ``k`` on the walk, or ``None``.

    Dynamic programming over positions with state (residue, nonempty, k seen);
    every pattern corresponds to exactly one path through the table, so the
    search is complete.  Ties go to the pattern found first scanning left to
    right with shorter skips preferred.
    """
    if d < 1:
        raise InputError("d must be positive")
    if not w.contains(k):
        raise InputError(f"node {k} is not on the walk")
    nodes = w.nodes
    length = len(w)
    cands = cycle_candidates(w)
    # best[p][(r, nonempty, seen)] = (removed_length, back_pointer)
    best = [dict() for _ in range(length + 1)]
    best[0][(0, False, nodes[0] == k)] = (0, None)
    for p in range(length + 1):
        for state, (val, _) in list(best[p].items()):
            r, ne, seen = state
            moves = []
            if p < length:
                moves.append((p + 1, (r, ne, seen or nodes[p + 1] == k), val, None))
            b = cands.get(p)
            if b is not None:
                moves.append((b, ((r + b - p) % d, True, seen), val + b - p, (p, b)))
            for q, nstate, nval, rng in moves:
                old = best[q].get(nstate)
                if old is None or nval > old[0]:
                    best[q][nstate] = (nval, (p, state, rng))
    final = best[length].get((0, True, True))
    if final is None:
        return None
    ranges = []
    q, state = length, (0, True, True)
    while True:
        _, back = best[q][state]
        if back is None:
            break
        p, pstate, rng = back
        if rng is not None:
            ranges.append(rng)
        q, state = p, pstate
    return CyclePattern(tuple(reversed(ranges)))


def reduction_length_bound(d: int, n: int) -> int:
    return (d - 1) + 2 * d * (n - 1)


def reduce_walk(w: Walk, d: int, k: int, length_cap: int = DEFAULT_LENGTH_CAP) -> Walk:
    """Iterate maximal removable-pattern removal until none exists."""
    if len(w) > length_cap:
        raise ResourceError(f"walk length {len(w)} exceeds cap {length_cap}")
    while True:
        s = find_removable_pattern(w, d, k)
        if s is None:
            return w
        w = remove_cycle_pattern(w, s)


def max_preserving_cycle_count(w: Walk, k: int) -> int:
    """Largest number of cycles in a pattern that keeps ``k`` on the walk."""
    if not w.contains(k):
        raise InputError(f"node {k} is not on the walk")
    nodes = w.nodes
    cands = cycle_candidates(w)
    best = [dict() for _ in range(len(w) + 1)]
    best[0][nodes[0] == k] = 0
    for p in range(len(w) + 1):
        for seen, cnt in list(best[p].items()):
            targets = []
            if p < len(w):
                targets.append((p + 1, seen or nodes[p + 1] == k, cnt))
            if p in cands:
                targets.append((cands[p], seen, cnt + 1))
            for q, s2, c2 in targets:
                if best[q].get(s2, -1) < c2:
                    best[q][s2] = c2
    return best[len(w)][True]


def iter_cycle_patterns(w: Walk, budget: int = 10**6):
    """Enumerate every cycle pattern of ``w`` (including the empty one) by backtracking."""
    cands = sorted(cycle_candidates(w).items())
    count = 0

    def rec(idx, prev_end, chosen):
        nonlocal count
        count += 1
        if count > budget:
            raise ResourceError(f"pattern enumeration exceeded budget of {budget}")
        yield CyclePattern(tuple(chosen))
        for t in range(idx, len(cands)):
            a, b = cands[t]
            if a >= prev_end:
                chosen.append((a, b))
                yield from rec(t + 1, b, chosen)
                chosen.pop()

    yield from rec(0, 0, [])


def certify_fixpoint(w: Walk, d: int, k: int, budget: int = 10**6) -> int:
    """Exhaustively check that ``w`` is a (d, k)-fixpoint.

    Returns the maximum number of cycles in a ``k``-preserving pattern.
    Raises ``AssertionError`` with a witness pattern on failure.
    """
    most = 0
    for s in iter_cycle_patterns(w, budget):
        if k not in _kept_nodes(w, s):
            continue
        if s.ranges and s.length % d == 0:
            raise AssertionError(f"removable pattern {s.ranges} remains")
        most = max(most, len(s))
    if most > d - 1:
        raise AssertionError(f"pattern with {most} cycles exceeds d - 1 = {d - 1}")
    return most


def walk_weight(a: MaxPlusMatrix, w: Walk, v: MaxPlusVector | None = None):
    """``A(W)``, plus ``v[end]`` when ``v`` is given."""
    total = Fraction(0)
    for i, j in w.edges:
        x = a.rows[i][j]
        if x is NEG_INF:
            return NEG_INF
        total += x
    if v is not None:
        total = total + v[w.end]
    return total
