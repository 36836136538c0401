"""Synchronizer systems, the cherry family and the two-cycle family E_k."""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import InputError
from ..graphs import graph_of_matrix, is_strongly_connected
from ..semiring import MaxPlusMatrix, MaxPlusVector

__all__ = [
    "generate_ek",
    "add_shared_self_loop",
    "generate_cherry",
    "cherry_layout",
    "er_bound",
    "synchronizer_system",
    "generate_random_irreducible",
    "ring_matrix",
]


def generate_ek(k: int) -> MaxPlusMatrix:
    """Cycles of lengths ``k`` and ``k + 1`` joined at node 0, all weights zero.

    Nodes ``0..k-1`` form the short cycle, node 0 plus ``k..2k-1`` the long one.
    """
    if not isinstance(k, int) or k < 2:
        raise InputError(f"E_k needs an integer k >= 2 (got {k!r})")
    short = list(range(k))
    long_ = [0] + list(range(k, 2 * k))
    edges = {}
    for cyc in (short, long_):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            edges[(a, b)] = 0
    return MaxPlusMatrix.from_edges(2 * k, edges)


def add_shared_self_loop(a: MaxPlusMatrix, weight=0) -> MaxPlusMatrix:
    """E_k with a self-loop at the shared node 0."""
    return a.with_entry(0, 0, weight)


def cherry_layout(ell: int) -> dict:
    """Node indices of the cherry graph with cycle sizes ``ell`` and ``ell + 1``.

    ``small`` and ``large`` list the cycle nodes starting at the attachment
    node; ``left`` and ``right`` are the interior nodes of the two paths to
    the hub ``s``, ordered away from the cycle.
    """
    small = list(range(ell))
    large = list(range(ell, 2 * ell + 1))
    left = list(range(2 * ell + 1, 3 * ell))
    hub = 3 * ell
    right = list(range(3 * ell + 1, 4 * ell))
    return {"small": small, "large": large, "left": left, "hub": hub, "right": right}


def generate_cherry(ell: int, c: int) -> MaxPlusMatrix:
    """Cherry graph with ``4 * ell`` nodes; ``A[i][j]`` is the weight of edge ``i -> j``.

    The small cycle has length ``ell`` and the large one ``ell + 1``; each
    carries weight ``3c`` except its first edge, which weighs ``3c + 1``.
    A path of length ``ell`` joins each cycle to the hub in both directions:
    hub-outbound edges weigh ``c``, edges toward the hub weigh ``3c`` from the
    small cycle and ``4c`` from the large one.
    """
    if not isinstance(ell, int) or not isinstance(c, int) or ell < 2 or c < 1:
        raise InputError(f"cherry needs integers ell >= 2 and c >= 1 (got {ell!r}, {c!r})")
    lay = cherry_layout(ell)
    edges = {}
    for cyc in (lay["small"], lay["large"]):
        for pos, (x, y) in enumerate(zip(cyc, cyc[1:] + cyc[:1])):
            edges[(x, y)] = 3 * c + 1 if pos == 0 else 3 * c
    for cyc, inner, inbound in ((lay["small"], lay["left"], 3 * c), (lay["large"], lay["right"], 4 * c)):
        path = [cyc[0]] + inner + [lay["hub"]]
        for x, y in zip(path, path[1:]):
            edges[(x, y)] = inbound
            edges[(y, x)] = c
    return MaxPlusMatrix.from_edges(4 * ell, edges)


def er_bound(ell: int, c: int) -> int:
    """Even and Rajsbaum's closed-form transience bound for the cherry family."""
    if ell < 2 or c < 1:
        raise InputError(f"need ell >= 2 and c >= 1 (got {ell}, {c})")
    return (112 * c - 16) * ell**3 + (32 - 12 * c) * ell**2 + 8 * ell - 1


def synchronizer_system(delays: MaxPlusMatrix, t0=None):
    """Round-start recurrence ``t(n) = A^n (x) t(0)`` for a delay matrix.

    Delays must be positive integers and the network strongly connected.
    ``t0`` defaults to all zeros.
    """
    if not is_strongly_connected(graph_of_matrix(delays)):
        raise InputError("the delay graph must be strongly connected")
    for _, _, x in delays.edges():
        if x.denominator != 1 or x <= 0:
            raise InputError(f"delays must be positive integers (got {x})")
    v = MaxPlusVector.zeros(delays.n) if t0 is None else MaxPlusVector(t0)
    if v.n != delays.n:
        raise InputError(f"t0 has {v.n} entries, expected {delays.n}")
    if not v.is_finite():
        raise InputError("t0 must be finite")
    return delays, v


def ring_matrix(n: int, weight=1) -> MaxPlusMatrix:
    """Directed ``n``-ring ``i -> i+1`` with a constant weight."""
    if n < 1:
        raise InputError("ring needs at least one node")
    return MaxPlusMatrix.from_edges(n, {(i, (i + 1) % n): weight for i in range(n)})


def generate_random_irreducible(n: int, density: float = 0.5, low: int = -5, high: int = 5,
                                max_den: int = 1, seed=None, rng: random.Random | None = None) -> MaxPlusMatrix:
    """Random matrix whose graph is strongly connected.

    A random Hamiltonian cycle guarantees irreducibility; every other entry
    is finite with probability ``density``.  Weights are ``p / q`` with
    ``q <= max_den`` and value in ``[low, high]``.
    """
    if n < 1 or not 0 <= density <= 1 or low > high or max_den < 1:
        raise InputError("invalid random-matrix parameters")
    rng = rng or random.Random(seed)

    def weight():
        q = rng.randint(1, max_den)
        return Fraction(rng.randint(low * q, high * q), q)

    order = list(range(n))
    rng.shuffle(order)
    edges = {}
    for a, b in zip(order, order[1:] + order[:1]):
        edges[(a, b)] = weight()
    for i in range(n):
        for j in range(n):
            if (i, j) not in edges and rng.random() < density:
                edges[(i, j)] = weight()
    return MaxPlusMatrix.from_edges(n, edges)
