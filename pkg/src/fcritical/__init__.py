"""Exact solvers and instance factories for critical sets of
threshold-reversible processes on graphs."""

from .core import (
    Graph,
    Instance,
    InvalidInstanceError,
    Trace,
    indicator,
    is_critical_set,
    simulate,
    step,
    validate_instance,
)
from .fptk import decide as fpt_decide
from .oracle import Outcome, SolveResult, decide_kmf, lower_bound, min_critical_set

__all__ = [
    "Graph",
    "Instance",
    "InvalidInstanceError",
    "Trace",
    "Outcome",
    "SolveResult",
    "indicator",
    "is_critical_set",
    "simulate",
    "step",
    "validate_instance",
    "lower_bound",
    "min_critical_set",
    "decide_kmf",
    "fpt_decide",
]

__version__ = "0.1.0"
