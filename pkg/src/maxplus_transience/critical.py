"""Maximum cycle mean, critical subgraph, and the parameters the bounds need."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import ConsistencyError, InputError, PreconditionError
from .exploration import exploration_penalty
from .graphs import (
    Digraph,
    component_cyclicity,
    cyclicity,
    girth,
    graph_of_matrix,
    is_strongly_connected,
    strongly_connected_components,
)
from .semiring import NEG_INF, POS_INF, MaxPlusMatrix, MaxPlusVector, format_entry, normalize

__all__ = [
    "CriticalComponent",
    "CriticalAnalysis",
    "max_cycle_mean",
    "max_walk_weights",
    "critical_subgraph",
    "critical_params",
]


def _karp(a: MaxPlusMatrix, comp: list):
    """Karp's recurrence (max version) on one strongly connected node set."""
    n = len(comp)
    index = {u: k for k, u in enumerate(comp)}
    preds = [[] for _ in range(n)]
    for u in comp:
        for w in comp:
            x = a.rows[u][w]
            if x is not NEG_INF:
                preds[index[w]].append((index[u], x))
    d = [[NEG_INF] * n for _ in range(n + 1)]
    d[0][0] = Fraction(0)
    for k in range(1, n + 1):
        prev, cur = d[k - 1], d[k]
        for w in range(n):
            best = NEG_INF
            for u, x in preds[w]:
                if prev[u] is NEG_INF:
                    continue
                s = prev[u] + x
                if best is NEG_INF or s > best:
                    best = s
            cur[w] = best
    lam = NEG_INF
    for w in range(n):
        if d[n][w] is NEG_INF:
            continue
        worst = None
        for k in range(n):
            if d[k][w] is NEG_INF:
                continue
            q = (d[n][w] - d[k][w]) / (n - k)
            if worst is None or q < worst:
                worst = q
        if worst is not None and (lam is NEG_INF or worst > lam):
            lam = worst
    return lam


def max_cycle_mean(a: MaxPlusMatrix):
    """Largest mean weight of a nonempty closed walk, ``NEG_INF`` if there is none."""
    g = graph_of_matrix(a)
    lam = NEG_INF
    for comp in strongly_connected_components(g):
        if len(comp) == 1 and (comp[0], comp[0]) not in g.edges:
            continue
        value = _karp(a, comp)
        if value is not NEG_INF and (lam is NEG_INF or value > lam):
            lam = value
    return lam


def max_walk_weights(a: MaxPlusMatrix) -> list:
    """All-pairs maximum walk weight, empty walks included.

    Requires that no cycle has positive weight; Floyd-Warshall in max-plus.
    """
    n = a.n
    d = [list(row) for row in a.rows]
    for i in range(n):
        if d[i][i] is NEG_INF or d[i][i] < 0:
            d[i][i] = Fraction(0)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is NEG_INF:
                continue
            di = d[i]
            for j in range(n):
                x = dk[j]
                if x is NEG_INF:
                    continue
                s = dik + x
                if di[j] is NEG_INF or s > di[j]:
                    di[j] = s
    for i in range(n):
        if d[i][i] > 0:
            raise ConsistencyError("positive cycle in a matrix assumed normalized")
    return d


@dataclass(frozen=True)
class CriticalComponent:
    """One strongly connected component of the critical subgraph."""

    nodes: tuple
    edges: frozenset
    girth: int
    cyclicity: int
    exploration_penalty: int

    def as_digraph(self) -> Digraph:
        index = {u: k for k, u in enumerate(self.nodes)}
        return Digraph(len(self.nodes), frozenset((index[i], index[j]) for i, j in self.edges))


def critical_subgraph(a: MaxPlusMatrix, lam=None):
    """Critical nodes, critical edges and the components of the critical subgraph.

    An edge ``(i, j)`` is critical iff ``Abar[i][j] + D[j][i] == 0`` where
    ``Abar = A - lambda`` and ``D`` holds maximum walk weights of ``Abar``.
    """
    if lam is None:
        lam = max_cycle_mean(a)
    if lam is NEG_INF:
        raise InputError("matrix has no cycle, so there is no critical subgraph")
    abar = normalize(a, lam)
    d = max_walk_weights(abar)
    edges = set()
    for i, j, x in abar.edges():
        back = d[j][i]
        if back is not NEG_INF and x + back == 0:
            edges.add((i, j))
    nodes = sorted({u for e in edges for u in e})
    gc = Digraph(a.n, frozenset(edges))
    components = []
    for comp in strongly_connected_components(gc):
        comp_edges = frozenset((i, j) for i, j in edges if i in comp and j in comp)
        if not comp_edges:
            continue
        sub = gc.induced(comp)
        components.append(
            CriticalComponent(
                nodes=tuple(comp),
                edges=comp_edges,
                girth=girth(sub),
                cyclicity=component_cyclicity(sub, range(sub.node_count)),
                exploration_penalty=exploration_penalty(sub),
            )
        )
    components.sort(key=lambda c: c.nodes)
    return tuple(nodes), frozenset(edges), tuple(components)


def _lcm(values):
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


@dataclass(frozen=True)
class CriticalAnalysis:
    n: int
    lam: object
    critical_nodes: tuple
    critical_edges: frozenset
    components: tuple
    g_hat: int
    gamma_hat: int
    ep_hat: int
    gamma_a: int
    gamma_g: int
    ep_g: object  # int, or None when G(A) is not strongly connected
    lambda_nc: object
    delta: object
    Delta: object
    Delta_nc: object
    n_nc: int
    v_norm: object = None

    @property
    def norm_a(self):
        return self.Delta - self.delta

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "lambda": format_entry(self.lam),
            "lambda_nc": format_entry(self.lambda_nc),
            "delta": format_entry(self.delta),
            "Delta": format_entry(self.Delta),
            "Delta_nc": format_entry(self.Delta_nc),
            "norm_A": format_entry(self.norm_a),
            "N_nc": self.n_nc,
            "critical_nodes": [u + 1 for u in self.critical_nodes],
            "critical_edges": [[i + 1, j + 1] for i, j in sorted(self.critical_edges)],
            "critical_components": [
                {
                    "nodes": [u + 1 for u in c.nodes],
                    "girth": c.girth,
                    "cyclicity": c.cyclicity,
                    "exploration_penalty": c.exploration_penalty,
                }
                for c in self.components
            ],
            "g_hat": self.g_hat,
            "gamma_hat": self.gamma_hat,
            "ep_hat": self.ep_hat,
            "gamma_A": self.gamma_a,
            "gamma_G": self.gamma_g,
            "ep_G": self.ep_g,
            "v_norm": None if self.v_norm is None else format_entry(self.v_norm),
        }


def critical_params(a: MaxPlusMatrix, v: MaxPlusVector | None = None,
                    require_irreducible: bool = True) -> CriticalAnalysis:
    """Collect every parameter the transience bounds are stated in.

    ``v_norm`` is ``POS_INF`` when ``v`` has a -inf entry; the bounds
    refuse such vectors.
    """
    g = graph_of_matrix(a)
    strongly = is_strongly_connected(g)
    if require_irreducible and not strongly:
        raise PreconditionError("matrix is not irreducible (G(A) is not strongly connected)")
    if v is not None and v.n != a.n:
        raise InputError(f"dimension mismatch: matrix {a.n} vs vector {v.n}")
    lam = max_cycle_mean(a)
    if lam is NEG_INF:
        raise PreconditionError("G(A) has no cycle")
    nodes, edges, comps = critical_subgraph(a, lam)
    noncrit = [u for u in range(a.n) if u not in set(nodes)]
    lambda_nc = max_cycle_mean(a.submatrix(noncrit)) if noncrit else NEG_INF
    if lambda_nc is not NEG_INF and not lambda_nc < lam:
        raise ConsistencyError("non-critical cycle mean is not below the maximum cycle mean")
    finite = a.finite_entries()
    nc_weights = [a.rows[i][j] for i in noncrit for j in noncrit if a.rows[i][j] is not NEG_INF]
    return CriticalAnalysis(
        n=a.n,
        lam=lam,
        critical_nodes=nodes,
        critical_edges=edges,
        components=comps,
        g_hat=max(c.girth for c in comps),
        gamma_hat=max(c.cyclicity for c in comps),
        ep_hat=max(c.exploration_penalty for c in comps),
        gamma_a=_lcm(c.cyclicity for c in comps),
        gamma_g=cyclicity(g),
        ep_g=exploration_penalty(g) if strongly else None,
        lambda_nc=lambda_nc,
        delta=min(finite),
        Delta=max(finite),
        Delta_nc=max(nc_weights) if nc_weights else NEG_INF,
        n_nc=len(noncrit),
        v_norm=None if v is None else v.norm(),
    )
