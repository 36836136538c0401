"""Closed-form transience bounds for systems and matrices.

All values are exact ``Fraction`` objects.  A bound ``B`` means the
periodic regime holds for every integer ``n >= B``, so it certifies
``transient <= ceil(B)``; ``floor(B)`` is only implied when ``B`` is an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .critical import CriticalAnalysis, critical_params
from .errors import ConsistencyError, InputError, PreconditionError
from .semiring import NEG_INF, POS_INF, MaxPlusMatrix, MaxPlusVector, format_entry, mat_powers

__all__ = [
    "SystemBoundReport",
    "MatrixBoundReport",
    "critical_bound",
    "repetitive_term",
    "explorative_term",
    "repetitive_bound",
    "explorative_bound",
    "system_bounds",
    "matrix_bounds",
    "integer_gap_estimate",
    "formula_applies",
    "mu_empirical",
    "LITERATURE_NOTE",
]

LITERATURE_NOTE = (
    "Hartmann-Arguelles bound max((|v| + |A| N) / (lambda - lambda0), 2 N^2) "
    "needs max-balancing for lambda0 and is not computed here."
)

_PROVENANCE = {
    "critical_bound": "max{N, (|v| + (Delta_nc - delta)(N-1)) / (lambda - lambda_nc)}; fraction is 0 if lambda_nc = -inf",
    "repetitive": "max{critical_bound, (g_hat - 1) + 2 g_hat (N-1)}",
    "explorative": "max{critical_bound, (gamma_hat - 1) + 2 gamma_hat (N-1) + ep_hat}",
    "b_one": "2(N-1) + ep_hat + (ep(G) + gamma_hat - 1)",
    "mu_upper": "|A| * b_one",
    "repetitive_matrix": "max{b_one, (|A| b_one + (Delta_nc - delta)(N-1)) / (lambda - lambda_nc), (g_hat - 1) + 2 g_hat (N-1)}",
    "explorative_matrix": "max{b_one, (|A| b_one + (Delta_nc - delta)(N-1)) / (lambda - lambda_nc), (gamma_hat - 1) + 2 gamma_hat (N-1) + ep_hat}",
    "corrected": "same formulas with max(Delta_nc, lambda) in place of Delta_nc",
}


def _gap_fraction(p: CriticalAnalysis, numerator, corrected: bool = False) -> Fraction:
    if p.lambda_nc is NEG_INF:
        return Fraction(0)
    gap = p.lam - p.lambda_nc
    if gap <= 0:
        raise ConsistencyError("lambda_nc must be strictly below lambda")
    top = max(p.Delta_nc, p.lam) if corrected else p.Delta_nc
    return Fraction(numerator + (top - p.delta) * (p.n - 1)) / gap


def formula_applies(p: CriticalAnalysis) -> bool:
    """Whether the plain critical bound is backed by its proof.

    The proof bounds the weight of the non-critical tail by ``(Delta_nc - lambda)``
    times its length, which only dominates when ``Delta_nc >= lambda``.
    """
    return p.lambda_nc is NEG_INF or p.Delta_nc >= p.lam


def critical_bound(p: CriticalAnalysis, v_norm=None, corrected: bool = False) -> Fraction:
    """Length beyond which every maximum-weight walk meets a critical node.

    ``corrected=True`` uses ``max(Delta_nc, lambda)`` in place of ``Delta_nc``;
    both agree whenever :func:`formula_applies` holds.
    """
    if v_norm is None:
        v_norm = p.v_norm
    if v_norm is None:
        raise InputError("the critical bound needs |v|")
    if v_norm is POS_INF:
        raise PreconditionError("|v| is infinite; the system bounds need a finite initial vector")
    return max(Fraction(p.n), _gap_fraction(p, v_norm, corrected))


def repetitive_term(p: CriticalAnalysis) -> Fraction:
    return Fraction((p.g_hat - 1) + 2 * p.g_hat * (p.n - 1))


def explorative_term(p: CriticalAnalysis) -> Fraction:
    return Fraction((p.gamma_hat - 1) + 2 * p.gamma_hat * (p.n - 1) + p.ep_hat)


def _params(a, v) -> CriticalAnalysis:
    if not isinstance(v, MaxPlusVector):
        v = MaxPlusVector(v)
    return critical_params(a, v)


def repetitive_bound(a: MaxPlusMatrix, v) -> Fraction:
    p = _params(a, v)
    return max(critical_bound(p), repetitive_term(p))


def explorative_bound(a: MaxPlusMatrix, v) -> Fraction:
    p = _params(a, v)
    return max(critical_bound(p), explorative_term(p))


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def _floor(x: Fraction) -> int:
    return math.floor(x)


@dataclass(frozen=True)
class SystemBoundReport:
    params: CriticalAnalysis
    critical_bound: Fraction
    repetitive: Fraction
    explorative: Fraction
    critical_bound_corrected: Fraction = None
    repetitive_corrected: Fraction = None
    explorative_corrected: Fraction = None

    @property
    def best(self) -> Fraction:
        return min(self.repetitive, self.explorative)

    @property
    def proven(self) -> Fraction:
        """Smaller corrected bound; this is the one scan horizons rely on."""
        return min(self.repetitive_corrected, self.explorative_corrected)

    @property
    def best_floor(self) -> int:
        return _floor(self.best)

    @property
    def certified(self) -> int:
        """Integer transient bound backed by the corrected formulas."""
        return _ceil(self.proven)

    def to_json(self) -> dict:
        out = {"certified": self.certified}
        for name in ("critical_bound", "repetitive", "explorative", "best",
                     "critical_bound_corrected", "repetitive_corrected", "explorative_corrected", "proven"):
            value = getattr(self, name)
            out[name] = format_entry(value)
            out[name + "_ceil"] = _ceil(value)
        out["formula_applies"] = formula_applies(self.params)
        out["parameters"] = self.params.to_json()
        out["provenance"] = {k: _PROVENANCE[k] for k in ("critical_bound", "repetitive", "explorative", "corrected")}
        out["literature_note"] = LITERATURE_NOTE
        return out


def system_bounds(a: MaxPlusMatrix, v, params: CriticalAnalysis | None = None) -> SystemBoundReport:
    if not isinstance(v, MaxPlusVector):
        v = MaxPlusVector(v)
    if params is None:
        params = critical_params(a, v)
    elif params.v_norm != v.norm():
        params = _with_norm(params, v.norm())
    bc = critical_bound(params)
    fixed = critical_bound(params, corrected=True)
    return SystemBoundReport(
        params=params,
        critical_bound=bc,
        repetitive=max(bc, repetitive_term(params)),
        explorative=max(bc, explorative_term(params)),
        critical_bound_corrected=fixed,
        repetitive_corrected=max(fixed, repetitive_term(params)),
        explorative_corrected=max(fixed, explorative_term(params)),
    )


def _with_norm(p: CriticalAnalysis, norm) -> CriticalAnalysis:
    return replace(p, v_norm=norm)


@dataclass(frozen=True)
class MatrixBoundReport:
    params: CriticalAnalysis
    b_one: int
    mu_upper: Fraction
    repetitive_matrix: Fraction
    explorative_matrix: Fraction
    integer_matrix: bool = False
    repetitive_matrix_corrected: Fraction = None
    explorative_matrix_corrected: Fraction = None

    @property
    def best(self) -> Fraction:
        return min(self.repetitive_matrix, self.explorative_matrix)

    @property
    def proven(self) -> Fraction:
        return min(self.repetitive_matrix_corrected, self.explorative_matrix_corrected)

    @property
    def best_floor(self) -> int:
        return _floor(self.best)

    @property
    def certified(self) -> int:
        return _ceil(self.proven)

    @property
    def asymptotic_regime(self) -> str:
        if self.params.lambda_nc is NEG_INF:
            return "O(N^2)"
        if self.integer_matrix:
            return "O(|A| N^4)"
        return "O(|A| N^2 / (lambda - lambda_nc))"

    def to_json(self) -> dict:
        out = {"b_one": self.b_one, "mu_upper": format_entry(self.mu_upper), "certified": self.certified}
        for name in ("repetitive_matrix", "explorative_matrix", "best",
                     "repetitive_matrix_corrected", "explorative_matrix_corrected", "proven"):
            value = getattr(self, name)
            out[name] = format_entry(value)
            out[name + "_ceil"] = _ceil(value)
        out["asymptotic_regime"] = self.asymptotic_regime
        out["formula_applies"] = formula_applies(self.params)
        out["provenance"] = {
            k: _PROVENANCE[k] for k in ("b_one", "mu_upper", "repetitive_matrix", "explorative_matrix", "corrected")
        }
        out["note"] = "b_one is kept in both maxima even when lambda_nc is finite, where it is dominated."
        return out


def matrix_bounds(a: MaxPlusMatrix, params: CriticalAnalysis | None = None) -> MatrixBoundReport:
    if params is None:
        params = critical_params(a)
    if params.ep_g is None:
        raise PreconditionError("matrix bounds need an irreducible matrix")
    p = params
    b_one = 2 * (p.n - 1) + p.ep_hat + (p.ep_g + p.gamma_hat - 1)
    norm_a = p.norm_a
    head = max(Fraction(b_one), _gap_fraction(p, norm_a * b_one))
    fixed = max(Fraction(b_one), _gap_fraction(p, norm_a * b_one, corrected=True))
    return MatrixBoundReport(
        params=p,
        b_one=b_one,
        mu_upper=norm_a * b_one,
        repetitive_matrix=max(head, repetitive_term(p)),
        explorative_matrix=max(head, explorative_term(p)),
        integer_matrix=all(x.denominator == 1 for x in a.finite_entries()),
        repetitive_matrix_corrected=max(fixed, repetitive_term(p)),
        explorative_matrix_corrected=max(fixed, explorative_term(p)),
    )


def integer_gap_estimate(n: int, n_nc: int):
    """Certified upper estimates ``((N - N_nc) N_nc, N^2 / 4)`` of ``1 / (lambda - lambda_nc)``
    for integer matrices."""
    if not 0 < n_nc < n:
        raise InputError(f"need 0 < N_nc < N (got N={n}, N_nc={n_nc})")
    return (n - n_nc) * n_nc, Fraction(n * n, 4)


def mu_empirical(a: MaxPlusMatrix, horizon: int | None = None, params: CriticalAnalysis | None = None,
                 b_one: int | None = None):
    """Largest ``A^n[i][h] - A^n[i][j]`` over ``n`` in ``[b_one, horizon]`` with ``A^n[i][j]`` finite.

    Without ``horizon`` the scan runs to ``max(b_one, matrix transient) + gamma``,
    after which the differences repeat, so the value is the exact supremum.
    Returns ``(mu, horizon)``.
    """
    from .oracle import matrix_transient

    if params is None:
        params = critical_params(a)
    if b_one is None:
        b_one = matrix_bounds(a, params).b_one
    if horizon is None:
        t = matrix_transient(a, params=params).transient
        horizon = max(b_one, t) + params.gamma_a - 1
    if horizon < b_one:
        raise InputError(f"horizon {horizon} is below b_one = {b_one}")
    mu = None
    for n, p in enumerate(mat_powers(a)):
        if n > horizon:
            break
        if n < b_one:
            continue
        for row in p.rows:
            finite = [x for x in row if x is not NEG_INF]
            if not finite:
                continue
            diff = max(finite) - min(finite)
            if mu is None or diff > mu:
                mu = diff
    return (Fraction(0) if mu is None else mu), horizon
