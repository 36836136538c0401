"""Exact measurement of system and matrix transients.

The scan relies on one fact: if ``f(n + p) = f(n) + p*lambda`` holds for the
whole vector (or matrix) at some ``n``, applying ``A`` shows it holds at
``n + 1`` as well.  The first index where the equation holds is therefore
the minimal transient, and scanning can stop there.  The horizon is a
proven bound, so failing to find the index before it is a hard error.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .bounds import matrix_bounds, system_bounds
from .critical import CriticalAnalysis, critical_params
from .errors import ConsistencyError, InputError
from .semiring import MaxPlusMatrix, MaxPlusVector, format_entry, mat_powers, mat_vec

__all__ = [
    "TransientMeasurement",
    "system_transient",
    "matrix_transient",
    "minimal_transient_invariance",
    "system_sequence",
]


@dataclass(frozen=True)
class TransientMeasurement:
    transient: int
    period: int
    ratio: object
    scan_horizon: int
    witness: int | None
    verified: bool = True

    def to_json(self) -> dict:
        return {
            "transient": self.transient,
            "period": self.period,
            "ratio": format_entry(self.ratio),
            "scan_horizon": self.scan_horizon,
            "witness": self.witness,
            "status": "verified" if self.verified else "unverified",
        }


def system_sequence(a: MaxPlusMatrix, v: MaxPlusVector):
    x = v
    while True:
        yield x
        x = mat_vec(a, x)


def _shift_vec(x: MaxPlusVector, s):
    return x.shift(s).entries


def _shift_mat(m: MaxPlusMatrix, s):
    return m.shift(s).rows


def _scan(seq, key, shifted, period, ratio, horizon, proven, full_scan):
    buf = deque(maxlen=period + 1)
    step = period * ratio
    first_equal = None
    last_violation = None
    for m, value in enumerate(seq):
        if m > horizon:
            break
        buf.append(value)
        if m < period:
            continue
        n = m - period
        if key(value) == shifted(buf[0], step):
            if first_equal is None:
                first_equal = n
                if not full_scan:
                    break
        else:
            last_violation = n
            if first_equal is not None:
                raise ConsistencyError(f"periodicity broke at {n} after holding at {first_equal}")
    if first_equal is None:
        if proven:
            raise ConsistencyError(f"no periodicity up to the proven horizon {horizon}")
        transient = max(0, horizon - period + 1)
        return transient, last_violation, False
    return first_equal, (first_equal - 1 if first_equal else None), True


def system_transient(a: MaxPlusMatrix, v, horizon: int | None = None, period_multiplier: int = 1,
                     params: CriticalAnalysis | None = None, full_scan: bool = False) -> TransientMeasurement:
    """Transient of ``x(n) = A^n (x) v`` with period ``m * gamma(A)`` and ratio ``lambda(A)``.

    The default horizon is ``ceil(min(repetitive, explorative)) + period`` using
    the corrected bounds, which are the proven ones;
    vectors with -inf entries use the matrix bounds instead.  A smaller
    user horizon yields an ``unverified`` measurement.
    """
    if not isinstance(v, MaxPlusVector):
        v = MaxPlusVector(v)
    if v.n != a.n:
        raise InputError(f"dimension mismatch: matrix {a.n} vs vector {v.n}")
    if params is None:
        params = critical_params(a)
    period = params.gamma_a * period_multiplier
    if v.is_finite():
        proven_bound = system_bounds(a, v, params).proven
    else:
        proven_bound = matrix_bounds(a, params).proven
    proven_horizon = math.ceil(proven_bound) + period
    if horizon is None:
        horizon = proven_horizon
    transient, witness, found = _scan(
        system_sequence(a, v), lambda x: x.entries, _shift_vec, period, params.lam,
        horizon, horizon >= proven_horizon, full_scan,
    )
    return TransientMeasurement(
        transient=transient,
        period=period,
        ratio=params.lam,
        scan_horizon=horizon,
        witness=witness,
        verified=found and horizon >= proven_horizon,
    )


def matrix_transient(a: MaxPlusMatrix, horizon: int | None = None, period_multiplier: int = 1,
                     params: CriticalAnalysis | None = None, full_scan: bool = False) -> TransientMeasurement:
    """Transient of the power sequence ``A^n``; -inf entries compare equal to themselves."""
    if params is None:
        params = critical_params(a)
    period = params.gamma_a * period_multiplier
    proven_bound = matrix_bounds(a, params).proven
    proven_horizon = math.ceil(proven_bound) + period
    if horizon is None:
        horizon = proven_horizon
    transient, witness, found = _scan(
        mat_powers(a), lambda m: m.rows, _shift_mat, period, params.lam,
        horizon, horizon >= proven_horizon, full_scan,
    )
    return TransientMeasurement(
        transient=transient,
        period=period,
        ratio=params.lam,
        scan_horizon=horizon,
        witness=witness,
        verified=found and horizon >= proven_horizon,
    )


def minimal_transient_invariance(a: MaxPlusMatrix, v, multiplier: int) -> bool:
    """Check that the period ``multiplier * gamma`` yields the same transient as ``gamma``."""
    if multiplier < 2:
        raise InputError("multiplier must be at least 2")
    params = critical_params(a)
    base = system_transient(a, v, params=params, full_scan=True)
    other = system_transient(a, v, params=params, period_multiplier=multiplier, full_scan=True)
    return base.transient == other.transient


