import math
from fractions import Fraction
from functools import reduce

import pytest

from helpers import elementary_cycles, random_scc, seeded
from maxplus_transience.applications import generate_ek
from maxplus_transience.errors import InputError, PreconditionError
from maxplus_transience.exploration import (
    ep_upper_bounds,
    exploration_penalty,
    walk_existence_table,
    wielandt_number,
)
from maxplus_transience.graphs import ACYCLIC, Digraph, cyclicity, girth, graph_of_matrix


def ring(n):
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def closed_walk_exists(g, u, n):
    """Plain depth-first enumeration, independent of the bitset code."""
    succ = g.successors()
    frontier = {u}
    for _ in range(n):
        frontier = {w for x in frontier for w in succ[x]}
    return u in frontier


def ep_by_enumeration(g, horizon):
    gam = cyclicity(g)
    last = None
    for n in range(0, horizon + 1, gam):
        if not all(closed_walk_exists(g, u, n) for u in range(g.node_count)):
            last = n
    return 0 if last is None else last + 1


def test_ek3_penalty_is_ten():
    g = graph_of_matrix(generate_ek(3))
    assert exploration_penalty(g) == 10
    def missing(u):
        return [n for n in range(1, 13) if not closed_walk_exists(g, u, n)]

    # shared node, a node of the 3-cycle, a node of the 4-cycle
    assert missing(0) == [1, 2, 5]
    assert missing(1) == [1, 2, 4, 5, 8]
    assert missing(3) == [1, 2, 3, 5, 6, 9]
    assert ep_by_enumeration(g, 12) == 10


def test_small_cases():
    assert exploration_penalty(Digraph(1, frozenset({(0, 0)}))) == 0
    assert exploration_penalty(Digraph(1)) == 0
    assert exploration_penalty(ring(4)) == 0
    with pytest.raises(PreconditionError):
        exploration_penalty(Digraph(2, frozenset({(0, 1)})))


def test_bound_values():
    assert ep_upper_bounds(6, 3, 1).paper_bound == 18
    assert ep_upper_bounds(6, 2, 2).schwarz == 10
    assert wielandt_number(3) == 5
    b = ep_upper_bounds(5, 2, 1)
    assert b.paper_bound == 5 + 3 * 2
    assert ep_upper_bounds(7, 4, 2).paper_bound == min(Fraction(7 + 5 * 4), Fraction(56, 2) - 2 - 8 + 2)
    with pytest.raises(InputError):
        ep_upper_bounds(6, 3, 2)


def test_random_sccs_respect_bounds_and_enumeration():
    rng = seeded(21)
    for _ in range(60):
        g = random_scc(rng.randint(1, 7), rng)
        ep = exploration_penalty(g)
        if girth(g) is ACYCLIC:
            continue
        b = ep_upper_bounds(g.node_count, girth(g), cyclicity(g))
        assert ep <= b.paper_bound and ep <= b.schwarz
        assert ep == ep_by_enumeration(g, b.schwarz + 2 * cyclicity(g))


def test_table_basics():
    t = walk_existence_table(ring(3), 9)
    assert t.exists(0, 1, 1) and not t.exists(0, 0, 1)
    assert t.lengths(0, 0) == [0, 3, 6, 9]
    assert t.n_max == 9


def test_residues_are_uniform_per_pair():
    rng = seeded(22)
    for _ in range(30):
        g = random_scc(rng.randint(1, 7), rng)
        gam = cyclicity(g)
        t = walk_existence_table(g, 30)
        for i in range(g.node_count):
            for j in range(g.node_count):
                assert len({n % gam for n in t.lengths(i, j)}) <= 1


def test_semigroup_threshold():
    rng = seeded(23)
    for _ in range(30):
        g = random_scc(rng.randint(2, 6), rng)
        cycles = elementary_cycles(g.node_count, g.edges)
        t = walk_existence_table(g, 60)
        for u in range(g.node_count):
            lengths = sorted({len(c) for c in cycles if u in c})
            if not lengths:
                continue
            d = reduce(math.gcd, lengths)
            threshold = (lengths[0] - d) * (lengths[-1] - d) // d
            for n in range(threshold, 61):
                if n % d == 0:
                    assert t.exists(n, u, u)
