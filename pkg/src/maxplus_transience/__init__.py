"""Exact transience bounds and measurements for max-plus linear systems."""

from .bounds import matrix_bounds, mu_empirical, system_bounds
from .critical import CriticalAnalysis, critical_params, max_cycle_mean
from .errors import ConsistencyError, InputError, PreconditionError, ResourceError, TransienceError
from .exploration import ep_upper_bounds, exploration_penalty
from .graphs import Digraph, cyclicity, girth, graph_of_matrix, strongly_connected_components
from .oracle import TransientMeasurement, matrix_transient, system_transient
from .semiring import NEG_INF, POS_INF, MaxPlusMatrix, MaxPlusVector, MinPlusMatrix, mat_mul, mat_vec
from .walks import Walk, reduce_walk

__version__ = "0.1.0"

__all__ = [
    "matrix_bounds",
    "mu_empirical",
    "system_bounds",
    "CriticalAnalysis",
    "critical_params",
    "max_cycle_mean",
    "ConsistencyError",
    "InputError",
    "PreconditionError",
    "ResourceError",
    "TransienceError",
    "ep_upper_bounds",
    "exploration_penalty",
    "Digraph",
    "cyclicity",
    "girth",
    "graph_of_matrix",
    "strongly_connected_components",
    "TransientMeasurement",
    "matrix_transient",
    "system_transient",
    "NEG_INF",
    "POS_INF",
    "MaxPlusMatrix",
    "MaxPlusVector",
    "MinPlusMatrix",
    "mat_mul",
    "mat_vec",
    "Walk",
    "reduce_walk",
]
