"""Command-line front end.

Exit codes: 0 success, 1 internal consistency failure, 2 input error,
3 precondition violation, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .applications.reversal import reversal_analysis
from .applications.scheduling import (
    add_redundant_restrictions,
    earliest_schedule,
    is_well_formed,
    parse_uniform_graph,
    schedule_matrix,
)
from .applications.synchronizer import (
    er_bound,
    generate_cherry,
    generate_ek,
    generate_random_irreducible,
    synchronizer_system,
)
from .bounds import matrix_bounds, system_bounds
from .critical import critical_params
from .errors import ConsistencyError, InputError, PreconditionError, ResourceError
from .exploration import exploration_penalty
from .graphs import graph_of_matrix, parse_digraph
from .oracle import matrix_transient, system_transient
from .semiring import MaxPlusVector, format_entry, format_matrix, parse_matrix, parse_vector

EXIT_OK, EXIT_CONSISTENCY, EXIT_INPUT, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_matrix(path):
    return parse_matrix(_read(path))


def _load_vector(path, n):
    if path is None:
        return MaxPlusVector.zeros(n)
    v = parse_vector(_read(path))
    if v.n != n:
        raise InputError(f"vector has {v.n} entries, matrix has dimension {n}")
    return v


def _emit(report: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    _print_plain(report, out, 0)


def _print_plain(obj, out, depth):
    pad = "  " * depth
    for key in sorted(obj):
        value = obj[key]
        if isinstance(value, dict):
            out.write(f"{pad}{key}:\n")
            _print_plain(value, out, depth + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (list, tuple)):
            out.write(f"{pad}{key}:\n")
            for row in value:
                out.write(f"{pad}  {' '.join(str(x) for x in row)}\n")
        else:
            out.write(f"{pad}{key}: {value}\n")


def _analysis_report(a, v, oracle: bool, horizon):
    params = critical_params(a, v)
    report = {
        "parameters": params.to_json(),
        "system_bounds": system_bounds(a, v, params).to_json(),
        "matrix_bounds": matrix_bounds(a, params).to_json(),
    }
    if oracle:
        report["system_transient"] = system_transient(a, v, horizon=horizon, params=params).to_json()
        report["matrix_transient"] = matrix_transient(a, horizon=horizon, params=params).to_json()
    return report


def cmd_analyze(args) -> int:
    a = _load_matrix(args.matrix)
    v = _load_vector(args.vector, a.n)
    _emit(_analysis_report(a, v, args.oracle, args.horizon), args.json)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.family == "ek":
        a = generate_ek(args.k)
    elif args.family == "cherry":
        a = generate_cherry(args.l, args.c)
    else:
        if args.n is None:
            raise InputError("random family needs --n")
        a = generate_random_irreducible(args.n, args.density, args.low, args.high,
                                        args.max_den, seed=args.seed)
    text = format_matrix(a)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_schedule(args) -> int:
    g = parse_uniform_graph(_read(args.uniform))
    if not is_well_formed(g):
        raise PreconditionError("uniform graph is not well-formed")
    raw_a, v = schedule_matrix(g)
    g2 = add_redundant_restrictions(g)
    a, v2 = schedule_matrix(g2)
    if v2 != v:
        raise ConsistencyError("redundant restrictions changed the initial vector")
    params = critical_params(a, v)
    meas = system_transient(a, v, horizon=args.horizon, params=params)
    table = earliest_schedule(g2, args.steps)
    report = {
        "initial_vector": [format_entry(x) for x in v.entries],
        "matrix_before_redundant_restrictions_irreducible": _irreducible(raw_a),
        "parameters": params.to_json(),
        "system_bounds": system_bounds(a, v, params).to_json(),
        "measurement": meas.to_json(),
        "schedule": [[format_entry(x) for x in row] for row in table],
    }
    _emit(report, args.json)
    return EXIT_OK


def _irreducible(a) -> bool:
    from .graphs import is_strongly_connected

    return is_strongly_connected(graph_of_matrix(a))


def _detect_cherry(a):
    if a.n % 4 or a.n < 8:
        return None
    ell = a.n // 4
    c = min(a.finite_entries())
    if c.denominator != 1 or c < 1:
        return None
    if generate_cherry(ell, int(c)) == a:
        return ell, int(c)
    return None


def cmd_sync(args) -> int:
    a = _load_matrix(args.matrix)
    t0 = None if args.vector is None else _load_vector(args.vector, a.n).entries
    a, v = synchronizer_system(a, t0)
    report = _analysis_report(a, v, True, args.horizon)
    if args.l is not None and args.c is not None:
        cherry = (args.l, args.c)
    else:
        cherry = _detect_cherry(a)
    if cherry is not None:
        report["cherry"] = {"l": cherry[0], "c": cherry[1], "even_rajsbaum_bound": er_bound(*cherry)}
    _emit(report, args.json)
    return EXIT_OK


def cmd_reversal(args) -> int:
    g = parse_digraph(_read(args.graph))
    report = reversal_analysis(g, args.mode, horizon=args.horizon)
    _emit(report, args.json)
    failed = [k for k, ok in report["checks"].items() if not ok]
    if failed:
        sys.stderr.write("bound checks failed: " + ", ".join(failed) + "\n")
        return EXIT_CONSISTENCY
    return EXIT_OK


# -- selftest ----------------------------------------------------------------

def _fx_cherry():
    a = generate_cherry(3, 2)
    v = MaxPlusVector.zeros(a.n)
    b = system_bounds(a, v)
    t = system_transient(a, v, params=b.params).transient
    ok = b.repetitive == 792 and er_bound(3, 2) == 5711 and t <= 792
    return "cherry H(3,2): 792 / 5711", ok, f"repetitive={b.repetitive} er={er_bound(3, 2)} transient={t}"


def _fx_schedule():
    from .applications.scheduling import EXAMPLE_UNIFORM_GRAPH

    a, v = schedule_matrix(add_redundant_restrictions(EXAMPLE_UNIFORM_GRAPH))
    b = system_bounds(a, v)
    t = system_transient(a, v, params=b.params).transient
    expect_v = tuple(Fraction(x) for x in (0, 1, 4, 6, 11, 0, 3))
    ok = v.entries == expect_v and b.params.lam == Fraction(13, 2) and b.critical_bound == 106 and t == 1
    return "scheduling example: 106, transient 1", ok, f"v={v} critical={b.critical_bound} transient={t}"


def _fx_ek():
    details, ok = [], True
    for k in range(2, 7):
        a = generate_ek(k)
        b = system_bounds(a, MaxPlusVector.zeros(a.n))
        ok &= b.critical_bound == 2 * k and b.repetitive == 4 * k * k - k - 1
        details.append(f"k={k}:{b.repetitive}")
    return "E_k critical 2k, repetitive 4k^2-k-1", ok, " ".join(details)


def _fx_ep():
    ep = exploration_penalty(graph_of_matrix(generate_ek(3)))
    return "ep(E_3) = 10", ep == 10, f"ep={ep}"


def _fx_random(seed=0, count=40):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 6)
        a = generate_random_irreducible(n, rng.uniform(0.4, 1.0), max_den=2, rng=rng)
        v = MaxPlusVector([Fraction(rng.randint(-10, 10), rng.randint(1, 2)) for _ in range(n)])
        p = critical_params(a, v)
        bound = system_bounds(a, v, p).certified
        t = system_transient(a, v, params=p).transient
        if t > bound:
            return f"random soundness (seed {seed})", False, f"transient {t} > bound {bound}"
    return f"random soundness (seed {seed})", True, f"{count} instances"


_FIXTURES = (_fx_cherry, _fx_schedule, _fx_ek, _fx_ep)


def _run_fixture(fn):
    try:
        return fn()
    except Exception as exc:  # reported as a failing row
        return fn.__name__, False, f"{type(exc).__name__}: {exc}"


def _run_random(seed):
    try:
        return _fx_random(seed)
    except Exception as exc:
        return f"random soundness (seed {seed})", False, f"{type(exc).__name__}: {exc}"


def cmd_selftest(args) -> int:
    seeds = [args.seed + k for k in range(max(1, args.jobs))]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_run_fixture, _FIXTURES)) + list(pool.map(_run_random, seeds))
    else:
        rows = [_run_fixture(f) for f in _FIXTURES] + [_run_random(s) for s in seeds]
    if args.json:
        _emit({"results": [{"name": n, "passed": ok, "detail": d} for n, ok, d in rows]}, True)
    else:
        for name, ok, detail in rows:
            print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
    return EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_CONSISTENCY


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxplus-transience",
                                     description="Transience bounds and exact transients of max-plus systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, horizon=True):
        p.add_argument("--json", action="store_true", help="emit JSON")
        if horizon:
            p.add_argument("--horizon", type=int, help="override the proven scan horizon (result marked unverified if smaller)")

    p = sub.add_parser("analyze", help="critical parameters and bounds of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--vector")
    p.add_argument("--oracle", action="store_true", help="also measure exact transients")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="write a matrix of a known family")
    p.add_argument("family", choices=("ek", "cherry", "random"))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--low", type=int, default=-5)
    p.add_argument("--high", type=int, default=5)
    p.add_argument("--max-den", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("schedule", help="earliest schedule of a uniform graph")
    p.add_argument("--uniform", required=True)
    p.add_argument("--steps", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("sync", help="synchronizer transient for a delay matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--vector")
    p.add_argument("--l", type=int)
    p.add_argument("--c", type=int)
    common(p)
    p.set_defaults(func=cmd_sync)

    p = sub.add_parser("reversal", help="Full Reversal routing or scheduling")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=("routing", "scheduling"), default="routing")
    common(p)
    p.set_defaults(func=cmd_reversal)

    p = sub.add_parser("selftest", help="run the built-in fixture table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except ResourceError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        sys.stderr.write(f"consistency failure: {exc}\n")
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
