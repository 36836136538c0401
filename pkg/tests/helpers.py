"""Independent oracles and random generators shared by the tests."""

import itertools
import random
from fractions import Fraction

from maxplus_transience.graphs import Digraph
from maxplus_transience.semiring import NEG_INF, MaxPlusMatrix


def elementary_cycles(n, edges):
    """All elementary cycles as node lists starting at their smallest node (brute force)."""
    succ = {u: sorted(j for i, j in edges if i == u) for u in range(n)}
    out = []
    for start in range(n):
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for nxt in succ[node]:
                if nxt == start:
                    out.append(list(path))
                elif nxt > start and nxt not in path:
                    stack.append((nxt, path + [nxt]))
    return out


def cycle_means(a):
    g = [(i, j) for i in range(a.n) for j in range(a.n) if a.rows[i][j] is not NEG_INF]
    for cyc in elementary_cycles(a.n, g):
        w = sum(a.rows[x][y] for x, y in zip(cyc, cyc[1:] + cyc[:1]))
        yield cyc, Fraction(w) / len(cyc)


def brute_lambda(a):
    means = [m for _, m in cycle_means(a)]
    return max(means) if means else NEG_INF


def brute_critical_edges(a):
    lam = brute_lambda(a)
    edges = set()
    for cyc, m in cycle_means(a):
        if m == lam:
            edges.update(zip(cyc, cyc[1:] + cyc[:1]))
    return edges


def reachable(n, edges, src):
    seen, todo = {src}, [src]
    while todo:
        u = todo.pop()
        for i, j in edges:
            if i == u and j not in seen:
                seen.add(j)
                todo.append(j)
    return seen


def random_scc(n, rng):
    """Strongly connected digraph; half the time with a forced cyclicity > 1."""
    if n > 1 and rng.random() < 0.5:
        p = rng.randint(2, n)
        cls = [k % p for k in range(n)]
        rng.shuffle(cls)
        by_cls = [[u for u in range(n) if cls[u] == r] for r in range(p)]
        reps = [members[0] for members in by_cls]
        # representatives form a cycle; every other node hangs off it both ways
        edges = set(zip(reps, reps[1:] + reps[:1]))
        for u in range(n):
            if u not in reps:
                edges.add((reps[(cls[u] - 1) % p], u))
                edges.add((u, reps[(cls[u] + 1) % p]))
        for i in range(n):
            for j in range(n):
                if cls[j] == (cls[i] + 1) % p and rng.random() < 0.3:
                    edges.add((i, j))
        return Digraph(n, frozenset(edges))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set(zip(perm, perm[1:] + perm[:1]))
    dens = rng.uniform(0.0, 0.4)
    for i, j in itertools.product(range(n), repeat=2):
        if rng.random() < dens:
            edges.add((i, j))
    return Digraph(n, frozenset(edges))


def random_matrix(n, rng, density=0.5, low=-5, high=5, max_den=3):
    """Arbitrary (possibly reducible) rational matrix."""
    rows = [[NEG_INF] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                q = rng.randint(1, max_den)
                rows[i][j] = Fraction(rng.randint(low * q, high * q), q)
    return MaxPlusMatrix(rows)


def random_vector(n, rng, low=-10, high=10, max_den=3):
    from maxplus_transience.semiring import MaxPlusVector

    return MaxPlusVector([Fraction(rng.randint(low, high), rng.randint(1, max_den)) for _ in range(n)])


def seeded(seed):
    return random.Random(seed)
