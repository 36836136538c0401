"""Full Reversal: greedy simulation and its min-plus work-vector system.

Every sink (a node without outgoing edges; a self-loop counts as outgoing)
reverses all of its incoming edges in each step.  Destinations in routing
are the nodes carrying a self-loop.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ..bounds import system_bounds
from ..critical import critical_params
from ..errors import ConsistencyError, InputError, PreconditionError, ResourceError
from ..graphs import ACYCLIC, Digraph, girth, is_strongly_connected
from ..oracle import system_transient
from ..semiring import POS_INF, MaxPlusVector, MinPlusMatrix, format_entry, min_plus_mat_vec

__all__ = [
    "ReversalState",
    "check_reversal_graph",
    "reversal_matrix",
    "full_reversal_step",
    "simulate",
    "min_plus_work",
    "termination_time",
    "is_tree",
    "reversal_analysis",
    "random_dag",
    "random_tree",
]


def _destinations(g: Digraph) -> list:
    return sorted(i for i, j in g.edges if i == j)


def _plain(g: Digraph) -> Digraph:
    return Digraph(g.node_count, frozenset((i, j) for i, j in g.edges if i != j))


def _weakly_connected(g: Digraph) -> bool:
    return is_strongly_connected(Digraph(g.node_count, g.edges | {(j, i) for i, j in g.edges}))


def check_reversal_graph(g: Digraph):
    for i, j in g.edges:
        if i != j and (j, i) in g.edges:
            raise InputError(f"antiparallel edges between {i + 1} and {j + 1}")
    if not _weakly_connected(g):
        raise PreconditionError("the initial graph must be weakly connected")
    if not g.edges:
        raise PreconditionError("the initial graph has no edges")


@dataclass(frozen=True)
class ReversalState:
    graph: Digraph
    work: tuple
    step: int = 0

    @classmethod
    def initial(cls, g: Digraph) -> "ReversalState":
        check_reversal_graph(g)
        return cls(g, (0,) * g.node_count, 0)

    def sinks(self) -> list:
        has_out = {i for i, _ in self.graph.edges}
        return [u for u in range(self.graph.node_count) if u not in has_out]


def full_reversal_step(state: ReversalState) -> ReversalState:
    sinks = set(state.sinks())
    for i, j in state.graph.edges:
        if i in sinks and j in sinks:
            raise ConsistencyError(f"adjacent sinks {i + 1} and {j + 1}")
    edges = frozenset((j, i) if j in sinks else (i, j) for i, j in state.graph.edges)
    work = tuple(w + (u in sinks) for u, w in enumerate(state.work))
    return ReversalState(Digraph(state.graph.node_count, edges), work, state.step + 1)


def simulate(g: Digraph, steps: int) -> list:
    """Work vectors ``W(0) .. W(steps)`` of the greedy execution."""
    state = ReversalState.initial(g)
    out = [state.work]
    for _ in range(steps):
        state = full_reversal_step(state)
        out.append(state.work)
    return out


def reversal_matrix(g: Digraph) -> MinPlusMatrix:
    """Min-plus matrix with ``W(t+1) = A (x)' W(t)``.

    Initial edge ``u -> v`` gives ``A[v][u] = 1`` and ``A[u][v] = 0``; a
    destination self-loop gives ``A[d][d] = 0``.
    """
    check_reversal_graph(g)
    n = g.node_count
    rows = [[POS_INF] * n for _ in range(n)]
    for u, v in g.edges:
        if u == v:
            rows[u][u] = Fraction(0)
            continue
        rows[v][u] = Fraction(1)
        rows[u][v] = Fraction(0)
    return MinPlusMatrix(rows)


def min_plus_work(g: Digraph, steps: int) -> list:
    a = reversal_matrix(g)
    w = (Fraction(0),) * g.node_count
    out = [w]
    for _ in range(steps):
        w = min_plus_mat_vec(a, w)
        out.append(w)
    return out


def termination_time(g: Digraph, cap: int | None = None) -> int:
    """First step at which the greedy execution has no sink."""
    cap = cap if cap is not None else 4 * g.node_count**2 + 10
    state = ReversalState.initial(g)
    while state.sinks():
        if state.step >= cap:
            raise ResourceError(f"no termination within {cap} steps")
        state = full_reversal_step(state)
    return state.step


def is_tree(g: Digraph) -> bool:
    """Whether the undirected support without self-loops is a tree."""
    plain = _plain(g)
    undirected = {frozenset(e) for e in plain.edges}
    return len(undirected) == g.node_count - 1 and _weakly_connected(plain)


def reversal_analysis(g: Digraph, mode: str = "routing", horizon: int | None = None) -> dict:
    """Simulate, build the min-plus system and compare against the mode's bounds.

    The system is analysed through its max-plus negation ``<-A, 0>``.
    """
    if mode not in ("routing", "scheduling"):
        raise InputError(f"unknown mode {mode!r}")
    check_reversal_graph(g)
    n = g.node_count
    dest = _destinations(g)
    plain = _plain(g)
    if girth(plain) is not ACYCLIC:
        raise PreconditionError("the initial graph (without self-loops) must be acyclic")
    if mode == "routing" and not dest:
        raise PreconditionError("routing needs at least one destination (self-loop)")
    if mode == "scheduling" and dest:
        raise PreconditionError("scheduling graphs have no self-loops")
    if n < 2:
        raise PreconditionError("need at least two nodes")
    tree = is_tree(g)
    a = reversal_matrix(g).negated()
    v = MaxPlusVector.zeros(n)
    params = critical_params(a, v)
    bounds = system_bounds(a, v, params)
    meas = system_transient(a, v, horizon=horizon, params=params)
    report = {
        "mode": mode,
        "N": n,
        "tree": tree,
        "destinations": [d + 1 for d in dest],
        "lambda": format_entry(params.lam),
        "lambda_nc": format_entry(params.lambda_nc),
        "bounds": bounds.to_json(),
        "measurement": meas.to_json(),
        "orientation": "edge u->v gives A[v][u]=1, A[u][v]=0; destination self-loop gives A[d][d]=0",
    }
    checks = {"within_repetitive_bound": meas.transient <= math.ceil(bounds.repetitive_corrected),
              "within_explorative_bound": meas.transient <= math.ceil(bounds.explorative_corrected)}
    if mode == "routing":
        term = termination_time(g)
        report["termination_time"] = term
        checks["termination_matches_transient"] = term == meas.transient
        if tree:
            report["linear_bound"] = 2 * (n - 1)
            checks["within_linear_bound"] = term <= 2 * (n - 1)
        if n >= 3:
            report["quadratic_bound"] = (n - 1) ** 2
            checks["within_quadratic_bound"] = term <= (n - 1) ** 2
    else:
        report["period"] = meas.period
        report["ratio"] = format_entry(meas.ratio)
        cubic = Fraction(n * n * (n - 1), 4)
        report["cubic_bound"] = format_entry(cubic)
        # the critical bound is never below N, which exceeds the cubic term at N = 2
        checks["critical_bound_within_cubic"] = bounds.critical_bound <= max(Fraction(n), cubic)
        checks["within_cubic_bound"] = meas.transient <= math.floor(cubic)
        if tree:
            report["linear_bound"] = 4 * n - 3
            checks["within_linear_bound"] = meas.transient <= 4 * n - 3
            checks["ratio_is_minus_half"] = params.lam == Fraction(-1, 2)
    report["checks"] = checks
    return report


def random_dag(n: int, density: float = 0.4, destinations: int = 0, seed=None,
               rng: random.Random | None = None) -> Digraph:
    """Weakly connected acyclic graph, optionally with destination self-loops.

    A random spanning tree keeps it connected; edges are oriented along a
    random topological order.
    """
    if n < 1 or destinations > n:
        raise InputError("invalid random-DAG parameters")
    rng = rng or random.Random(seed)
    rank = list(range(n))
    rng.shuffle(rank)
    pairs = {tuple(sorted((rng.randrange(k), k))) for k in range(1, n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                pairs.add((i, j))
    edges = {(a, b) if rank[a] < rank[b] else (b, a) for a, b in pairs}
    for d in rng.sample(range(n), destinations):
        edges.add((d, d))
    return Digraph(n, frozenset(edges))


def random_tree(n: int, destination: bool = True, seed=None, rng: random.Random | None = None) -> Digraph:
    """Randomly oriented tree, with one destination self-loop if requested."""
    if n < 1:
        raise InputError("need at least one node")
    rng = rng or random.Random(seed)
    edges = set()
    for k in range(1, n):
        p = rng.randrange(k)
        edges.add((p, k) if rng.random() < 0.5 else (k, p))
    if destination:
        d = rng.randrange(n)
        edges.add((d, d))
    return Digraph(n, frozenset(edges))
