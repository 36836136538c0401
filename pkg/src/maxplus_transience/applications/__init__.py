"""Cyclic scheduling, synchronizers and Full Reversal on top of the core toolkit."""

from .reversal import (
    ReversalState,
    full_reversal_step,
    min_plus_work,
    random_dag,
    random_tree,
    reversal_analysis,
    reversal_matrix,
    simulate,
    termination_time,
)
from .scheduling import (
    EXAMPLE_UNIFORM_GRAPH,
    UniformGraph,
    add_redundant_restrictions,
    direct_earliest_schedule,
    earliest_schedule,
    is_well_formed,
    parse_uniform_graph,
    schedule_matrix,
)
from .synchronizer import (
    add_shared_self_loop,
    er_bound,
    generate_cherry,
    generate_ek,
    generate_random_irreducible,
    synchronizer_system,
)

__all__ = [
    "ReversalState",
    "full_reversal_step",
    "min_plus_work",
    "random_dag",
    "random_tree",
    "reversal_analysis",
    "reversal_matrix",
    "simulate",
    "termination_time",
    "EXAMPLE_UNIFORM_GRAPH",
    "UniformGraph",
    "add_redundant_restrictions",
    "direct_earliest_schedule",
    "earliest_schedule",
    "is_well_formed",
    "parse_uniform_graph",
    "schedule_matrix",
    "add_shared_self_loop",
    "er_bound",
    "generate_cherry",
    "generate_ek",
    "generate_random_irreducible",
    "synchronizer_system",
]
