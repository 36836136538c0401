"""Exploration penalty and Boolean walk-existence tables.

Boolean matrices are lists of Python ints used as row bitsets: bit ``j`` of
row ``i`` is set iff there is a walk from ``i`` to ``j``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import InputError, PreconditionError
from .graphs import ACYCLIC, Digraph, cyclicity, girth, is_strongly_connected

__all__ = [
    "EpBounds",
    "wielandt_number",
    "ep_upper_bounds",
    "exploration_penalty",
    "WalkTable",
    "walk_existence_table",
    "bool_identity",
    "bool_adjacency",
    "bool_mul",
]


def bool_identity(n: int) -> list:
    return [1 << i for i in range(n)]


def bool_adjacency(g: Digraph) -> list:
    rows = [0] * g.node_count
    for i, j in g.edges:
        rows[i] |= 1 << j
    return rows


def bool_mul(x: list, y: list) -> list:
    out = []
    for row in x:
        acc = 0
        k = 0
        while row:
            if row & 1:
                acc |= y[k]
            row >>= 1
            k += 1
        out.append(acc)
    return out


def wielandt_number(n: int) -> int:
    return n * n - 2 * n + 2


class EpBounds(NamedTuple):
    paper_bound: Fraction
    wielandt: int
    schwarz: int

    @property
    def paper_bound_ceil(self) -> int:
        return math.ceil(self.paper_bound)


def ep_upper_bounds(n: int, g: int, gamma: int) -> EpBounds:
    """Girth-based, Wielandt and Schwarz upper bounds on the exploration penalty.

    The girth-based bound is ``min{N + (N-2)g, 2gN/gamma - g/gamma - 2g + gamma}``.
    """
    if n < 1 or not 1 <= g <= n or gamma < 1:
        raise InputError(f"need N >= 1, 1 <= g <= N, gamma >= 1 (got N={n}, g={g}, gamma={gamma})")
    if g % gamma:
        raise InputError(f"cyclicity {gamma} does not divide girth {g}")
    denardo = Fraction(n + (n - 2) * g)
    girth_term = Fraction(2 * g * n, gamma) - Fraction(g, gamma) - 2 * g + gamma
    schwarz = gamma * wielandt_number(n // gamma) + n % gamma
    return EpBounds(min(denardo, girth_term), wielandt_number(n), schwarz)


def exploration_penalty(h: Digraph) -> int:
    """Least ``e`` such that every node has closed walks of every length ``n >= e``
    divisible by the cyclicity.

    Scans diagonals of ``B^0, B^gamma, B^{2 gamma}, ...`` up to the smaller of the
    two proven upper bounds plus one extra period.
    """
    if not is_strongly_connected(h):
        raise PreconditionError("exploration penalty is defined for strongly connected graphs")
    g = girth(h)
    if g is ACYCLIC:
        # a single node without self-loop: only the empty walk exists
        return 0
    gamma = cyclicity(h)
    bounds = ep_upper_bounds(h.node_count, g, gamma)
    limit = min(bounds.paper_bound_ceil, bounds.schwarz) + gamma
    base = bool_adjacency(h)
    step_matrix = base
    for _ in range(gamma - 1):
        step_matrix = bool_mul(step_matrix, base)
    cur = bool_identity(h.node_count)
    last_fail = None
    n = 0
    while n <= limit:
        if any(not (row >> i) & 1 for i, row in enumerate(cur)):
            last_fail = n
        cur = bool_mul(cur, step_matrix)
        n += gamma
    return 0 if last_fail is None else last_fail + 1


class WalkTable:
    """``exists(n, i, j)`` iff some walk of length exactly ``n`` goes from ``i`` to ``j``."""

    def __init__(self, powers: list):
        self.powers = powers

    @property
    def n_max(self) -> int:
        return len(self.powers) - 1

    def exists(self, n: int, i: int, j: int) -> bool:
        return bool((self.powers[n][i] >> j) & 1)

    def lengths(self, i: int, j: int) -> list:
        return [n for n in range(len(self.powers)) if self.exists(n, i, j)]


def walk_existence_table(g: Digraph, n_max: int) -> WalkTable:
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    base = bool_adjacency(g)
    powers = [bool_identity(g.node_count)]
    for _ in range(n_max):
        powers.append(bool_mul(powers[-1], base))
    return WalkTable(powers)
