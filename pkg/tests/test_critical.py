from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_critical_edges, brute_lambda, random_matrix, seeded
from maxplus_transience.applications import (
    EXAMPLE_UNIFORM_GRAPH,
    add_redundant_restrictions,
    generate_cherry,
    generate_ek,
    generate_random_irreducible,
    schedule_matrix,
)
from maxplus_transience.critical import critical_params, critical_subgraph, max_cycle_mean, max_walk_weights
from maxplus_transience.errors import ConsistencyError, PreconditionError
from maxplus_transience.semiring import NEG_INF, MaxPlusMatrix, MaxPlusVector, brute_force_walk_max


def test_karp_matches_enumeration_on_random_matrices():
    rng = seeded(11)
    for _ in range(150):
        a = random_matrix(rng.randint(1, 7), rng, density=rng.uniform(0.1, 0.7))
        assert max_cycle_mean(a) == brute_lambda(a)


def test_critical_edges_match_enumeration():
    rng = seeded(12)
    for _ in range(100):
        a = generate_random_irreducible(rng.randint(1, 6), rng.uniform(0.2, 0.8), max_den=2, rng=rng)
        _, edges, _ = critical_subgraph(a)
        assert edges == brute_critical_edges(a)


def test_closed_walks_in_critical_components_have_mean_lambda():
    rng = seeded(13)
    for _ in range(40):
        a = generate_random_irreducible(rng.randint(1, 5), rng.uniform(0.3, 1), low=-2, high=2, rng=rng)
        p = critical_params(a)
        for comp in p.components:
            sub = MaxPlusMatrix([[a.rows[i][j] if (i, j) in comp.edges else NEG_INF
                                  for j in range(a.n)] for i in range(a.n)])
            neg = MaxPlusMatrix([[NEG_INF if x is NEG_INF else -x for x in row] for row in sub.rows])
            for length in range(1, 2 * a.n + 1):
                for u in comp.nodes:
                    # inside G_c the heaviest and lightest closed walks of a length agree
                    w = brute_force_walk_max(sub, length, u, u)
                    light = brute_force_walk_max(neg, length, u, u)
                    if w is not NEG_INF:
                        assert w == length * p.lam
                        assert -light == length * p.lam


def test_max_walk_weights_rejects_positive_cycles():
    with pytest.raises(ConsistencyError):
        max_walk_weights(MaxPlusMatrix([[1]]))


def test_max_walk_weights_include_empty_walk():
    d = max_walk_weights(MaxPlusMatrix([[-1, -2], [NEG_INF, NEG_INF]]))
    assert d[0][0] == 0 and d[1][1] == 0 and d[0][1] == -2 and d[1][0] is NEG_INF


def test_cherry_parameters():
    p = critical_params(generate_cherry(3, 2))
    assert p.lam == Fraction(19, 3)
    assert p.lambda_nc == Fraction(25, 4)
    assert (p.Delta, p.delta, p.Delta_nc) == (8, 2, 8)
    assert p.critical_nodes == (0, 1, 2)
    assert p.g_hat == 3


def test_scheduling_example_parameters():
    a, v = schedule_matrix(add_redundant_restrictions(EXAMPLE_UNIFORM_GRAPH))
    p = critical_params(a, v)
    assert p.lam == Fraction(13, 2)
    assert (p.lambda_nc, p.Delta_nc, p.delta) == (6, 8, 1)
    assert (p.g_hat, p.gamma_hat, p.ep_hat) == (2, 2, 0)
    assert p.v_norm == 11
    # the critical circuit runs between tasks 5 and 7
    assert set(p.critical_nodes) == {4, 6}


@pytest.mark.parametrize("k", range(2, 7))
def test_ek_has_no_noncritical_cycle(k):
    p = critical_params(generate_ek(k))
    assert p.lam == 0
    assert p.lambda_nc is NEG_INF
    assert (p.n, p.g_hat, p.gamma_hat) == (2 * k, k, 1)


def test_reducible_matrix_is_rejected():
    a = MaxPlusMatrix([[0, 1], [NEG_INF, 0]])
    with pytest.raises(PreconditionError, match="irreducible"):
        critical_params(a)
    assert critical_params(a, require_irreducible=False).ep_g is None


def test_json_is_one_indexed():
    out = critical_params(generate_ek(2), MaxPlusVector([0, 1, 2, 3])).to_json()
    assert out["critical_nodes"] == [1, 2, 3, 4]
    assert out["lambda_nc"] == "-inf"
    assert out["v_norm"] == "3"


@given(st.integers(0, 10**6), st.fractions(min_value=-4, max_value=4, max_denominator=3))
def test_shift_moves_lambda_only(seed, mu):
    rng = seeded(seed)
    a = generate_random_irreducible(rng.randint(1, 5), 0.5, max_den=2, rng=rng)
    p, q = critical_params(a), critical_params(a.shift(mu))
    assert q.lam == p.lam + mu
    assert q.critical_edges == p.critical_edges
    assert (q.g_hat, q.gamma_hat, q.ep_hat, q.gamma_a) == (p.g_hat, p.gamma_hat, p.ep_hat, p.gamma_a)
