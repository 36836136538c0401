"""Acceptance criteria 1-10, one test each.

Every test prints a single PASS/FAIL line; the lines are also collected and
repeated in the pytest terminal summary.
"""

import itertools
import math
import time
from fractions import Fraction
from functools import lru_cache

from conftest import ACCEPTANCE_LINES
from helpers import random_scc, random_vector, seeded
from maxplus_transience.applications import (
    add_shared_self_loop,
    er_bound,
    generate_cherry,
    generate_ek,
    generate_random_irreducible,
    min_plus_work,
    random_dag,
    random_tree,
    reversal_analysis,
    schedule_matrix,
    simulate,
    synchronizer_system,
)
from maxplus_transience.applications.scheduling import EXAMPLE_UNIFORM_GRAPH, add_redundant_restrictions
from maxplus_transience.bounds import formula_applies, matrix_bounds, mu_empirical, system_bounds
from maxplus_transience.critical import critical_params
from maxplus_transience.exploration import ep_upper_bounds, exploration_penalty, walk_existence_table
from maxplus_transience.graphs import Digraph, cyclicity, girth, graph_of_matrix
from maxplus_transience.oracle import matrix_transient, system_sequence, system_transient
from maxplus_transience.semiring import NEG_INF, MaxPlusMatrix, MaxPlusVector, mat_powers, mat_vec
from maxplus_transience.walks import Walk, certify_fixpoint, reduce_walk, reduction_length_bound


def report(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_cherry_h32():
    start = time.perf_counter()
    a, v = synchronizer_system(generate_cherry(3, 2))
    bounds = system_bounds(a, v)
    t = system_transient(a, v, params=bounds.params).transient
    elapsed = time.perf_counter() - start
    ok = bounds.repetitive == 792 and er_bound(3, 2) == 5711 and t <= 792 and elapsed < 30
    report(1, ok, f"repetitive={bounds.repetitive} even_rajsbaum={er_bound(3, 2)} "
                  f"transient={t} time={elapsed:.1f}s")


def test_criterion_02_cherry_family():
    bad = []
    for ell in (2, 3, 4):
        for c in (1, 2):
            a = generate_cherry(ell, c)
            r = system_bounds(a, MaxPlusVector.zeros(a.n))
            p = r.params
            if (r.critical_bound != 12 * c * ell**3 + 9 * c * ell**2 - 3 * c * ell
                    or p.lam != 3 * c + Fraction(1, ell)
                    or p.lambda_nc != 3 * c + Fraction(1, ell + 1)):
                bad.append((ell, c, r.critical_bound, p.lam, p.lambda_nc))
    report(2, not bad, "6 instances exact" if not bad else f"mismatches {bad}")


def test_criterion_03_scheduling_example():
    a, v = schedule_matrix(add_redundant_restrictions(EXAMPLE_UNIFORM_GRAPH))
    r = system_bounds(a, v)
    t = system_transient(a, v, params=r.params).transient
    expect_v = tuple(Fraction(x) for x in (0, 1, 4, 6, 11, 0, 3))
    ok = v.entries == expect_v and r.params.lam == Fraction(13, 2) and r.critical_bound == 106 and t == 1
    report(3, ok, f"v={[str(x) for x in v.entries]} lambda={r.params.lam} "
                  f"critical={r.critical_bound} transient={t}")


def test_criterion_04_ek_family():
    details, ok = [], True
    for k in range(2, 7):
        a = generate_ek(k)
        zero = MaxPlusVector.zeros(a.n)
        r = system_bounds(a, zero)
        looped = system_bounds(add_shared_self_loop(a), zero)
        ok &= r.critical_bound == 2 * k
        ok &= r.repetitive == 4 * k * k - k - 1
        ok &= r.explorative <= 2 * k * k + 4 * k - 2
        if k >= 3:
            ok &= r.explorative < r.repetitive
        ok &= looped.repetitive < looped.explorative
        details.append(f"k={k}:{r.critical_bound}/{r.repetitive}/{r.explorative}"
                       f"|loop {looped.repetitive}/{looped.explorative}")
    report(4, ok, " ".join(details))


@lru_cache(maxsize=None)
def random_suite(count=200, seed=0):
    """Irreducible rational matrices with N <= 7, density >= 0.4, weights in [-5, 5]."""
    rng = seeded(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 7)
        a = generate_random_irreducible(n, rng.uniform(0.4, 1.0), low=-5, high=5,
                                        max_den=rng.randint(1, 3), rng=rng)
        v = random_vector(n, rng, low=-5, high=5)
        out.append((a, v))
    return tuple(out)


def _holds_for(seq, start, steps, period, lam):
    """``f(n + period) == f(n) + period * lam`` for ``n`` in ``[start, start + steps]``."""
    values = list(itertools.islice(seq, start + steps + period + 1))
    return all(values[n + period] == values[n].shift(period * lam) for n in range(start, start + steps + 1))


def test_criterion_05_soundness_suite():
    start = time.perf_counter()
    stated_sys, stated_mat, periodic_fail = [], [], []
    flagged = 0
    for idx, (a, v) in enumerate(random_suite()):
        p = critical_params(a, v)
        flagged += not formula_applies(p)
        sb = system_bounds(a, v, p)
        mb = matrix_bounds(a, p)
        ts = system_transient(a, v, params=p).transient
        tm = matrix_transient(a, params=p).transient
        if ts > math.floor(min(sb.repetitive, sb.explorative)):
            stated_sys.append((idx, ts, str(sb.best)))
        if tm > math.floor(min(mb.repetitive_matrix, mb.explorative_matrix)):
            stated_mat.append((idx, tm, str(mb.best)))
        gam = p.gamma_a
        if not (_holds_for(system_sequence(a, v), ts, 3 * gam, gam, p.lam)
                and _holds_for(mat_powers(a), tm, 3 * gam, gam, p.lam)):
            periodic_fail.append(idx)
    elapsed = time.perf_counter() - start
    ok = not stated_sys and not stated_mat and not periodic_fail and elapsed < 300
    report(5, ok, f"200 instances, {flagged} with Delta_nc < lambda; system over floor(bound): {stated_sys}; "
                  f"matrix over floor(bound): {stated_mat}; periodicity failures: {periodic_fail}; "
                  f"time={elapsed:.0f}s")


def _walk_maxima(a, n, i):
    """Maximum weight of length-``n`` walks from ``i`` to every node, by enumeration."""
    best = [NEG_INF] * a.n
    for tail in itertools.product(range(a.n), repeat=n):
        w, cur = Fraction(0), i
        for nxt in tail:
            x = a.rows[cur][nxt]
            if x is NEG_INF:
                break
            w += x
            cur = nxt
        else:
            if best[cur] is NEG_INF or w > best[cur]:
                best[cur] = w
    return best


def test_criterion_06_powers_equal_walk_maxima():
    rng = seeded(6)
    mismatches = 0
    for _ in range(50):
        n = rng.randint(1, 5)
        density = rng.uniform(0.2, 1.0)
        a = MaxPlusMatrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 3)) if rng.random() < density else NEG_INF
                            for _ in range(n)] for _ in range(n)])
        length = rng.randint(0, 6)
        power = list(itertools.islice(mat_powers(a), length + 1))[-1]
        for i in range(n):
            if list(power.rows[i]) != _walk_maxima(a, length, i):
                mismatches += 1
    report(6, mismatches == 0, f"50 matrices, {mismatches} mismatching rows")


def test_criterion_07_exploration_penalty():
    ek = exploration_penalty(graph_of_matrix(generate_ek(3)))
    rng = seeded(7)
    bad = []
    for idx in range(100):
        g = random_scc(rng.randint(1, 8), rng)
        ep = exploration_penalty(g)
        gam = cyclicity(g)
        table = walk_existence_table(g, 40)
        gi = girth(g)
        bounds = ep_upper_bounds(g.node_count, gi, gam)
        if ep > bounds.paper_bound or ep > bounds.schwarz:
            bad.append((idx, "bound", ep, bounds))
        # definition: closed walks of every multiple of gamma from ep on, and not at ep - 1
        for u in range(g.node_count):
            if not all(table.exists(n, u, u) for n in range(ep, 41) if n % gam == 0):
                bad.append((idx, "definition", u))
        if ep > 0 and all(table.exists(ep - 1 - (ep - 1) % gam, u, u) for u in range(g.node_count)):
            bad.append((idx, "not minimal", ep))
        for i in range(g.node_count):
            for j in range(g.node_count):
                if len({n % gam for n in table.lengths(i, j)}) > 1:
                    bad.append((idx, "residue", i, j))
    report(7, ek == 10 and not bad, f"ep(E_3)={ek}; 100 random SCCs, problems: {bad[:5]}")


def _random_walk(g, length, rng):
    succ = g.successors()
    u = rng.randrange(g.node_count)
    nodes = [u]
    for _ in range(length):
        u = rng.choice(succ[u])
        nodes.append(u)
    return Walk.from_nodes(nodes)


def test_criterion_08_walk_reduction():
    rng = seeded(8)
    bad = []
    for idx in range(300):
        g = random_scc(rng.randint(1, 6), rng)
        if not g.edges:
            g = Digraph(g.node_count, frozenset({(0, 0)}))
        w = _random_walk(g, rng.randint(0, 60), rng)
        d = rng.randint(1, 6)
        k = rng.choice(w.nodes)
        r = reduce_walk(w, d, k)
        ok = (len(r) <= reduction_length_bound(d, g.node_count)
              and (len(w) - len(r)) % d == 0
              and r.contains(k)
              and (r.start, r.end) == (w.start, w.end)
              and set(r.edges) <= set(w.edges))
        try:
            certify_fixpoint(r, d, k)
        except AssertionError:
            ok = False
        if not ok:
            bad.append(idx)
    report(8, not bad, f"300 instances, failing: {bad}")


def test_criterion_09_full_reversal():
    rng = seeded(9)
    bad = []
    for idx in range(100):
        g = random_dag(rng.randint(2, 8), rng.uniform(0, 0.6), rng.randint(0, 2), rng=rng)
        if simulate(g, 40) != min_plus_work(g, 40):
            bad.append(("simulation", idx))
    for idx in range(100):
        n = rng.randint(2, 10)
        routing = reversal_analysis(random_tree(n, rng=rng), "routing")
        if routing["termination_time"] > 2 * (n - 1):
            bad.append(("tree routing", idx))
        sched = reversal_analysis(random_tree(n, destination=False, rng=rng), "scheduling")
        if sched["lambda"] != "-1/2" or sched["measurement"]["transient"] > 4 * n - 3:
            bad.append(("tree scheduling", idx))
    for idx in range(100):
        n = rng.randint(2, 8)
        routing = reversal_analysis(random_dag(n, rng.uniform(0, 0.6), rng.randint(1, 2), rng=rng), "routing")
        if routing["termination_time"] > (n - 1) ** 2:
            bad.append(("general routing", idx))
    report(9, not bad, f"100 simulations, 100 trees, 100 general graphs; failing: {bad}")


def test_criterion_10_matrix_versus_system():
    bad = []
    premise_held = 0
    for idx, (a, _) in enumerate(random_suite()):
        p = critical_params(a)
        mb = matrix_bounds(a, p)
        mu, _ = mu_empirical(a, params=p, b_one=mb.b_one)
        if mu > mb.mu_upper:
            bad.append((idx, "mu", str(mu), str(mb.mu_upper)))
        gam, step = p.gamma_a, p.gamma_a * p.lam
        tm = matrix_transient(a, params=p).transient
        top = max(mb.b_one, tm) + 2 * gam
        powers = list(itertools.islice(mat_powers(a), top + gam + 1))
        units = [MaxPlusVector.truncated_unit(a.n, j, mu) for j in range(a.n)]
        for n in range(mb.b_one, top + 1):
            stable = all(mat_vec(powers[n + gam], u) == mat_vec(powers[n], u).shift(step) for u in units)
            if stable:
                premise_held += 1
                if powers[n + gam] != powers[n].shift(step):
                    bad.append((idx, "matrix", n))
    report(10, not bad, f"200 matrices, premise held at {premise_held} indices; problems: {bad[:5]}")
