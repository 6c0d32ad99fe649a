"""Bounded-exhaustive exploration: schedules, simple executions, hunts."""

from .schedules import enumerate_schedules, explore_schedules
from .simple import (
    SimpleParams,
    assign_simple,
    enumerate_simple_assignments,
    enumerate_skeletons,
    is_simple,
)
from .hunt import Counterexample, HuntBounds, HuntReport, VerdictMismatchError, hunt
from .reduction import ReductionBreach, ReductionReport, check_reduction

__all__ = [
    "Counterexample",
    "HuntBounds",
    "HuntReport",
    "ReductionBreach",
    "ReductionReport",
    "SimpleParams",
    "VerdictMismatchError",
    "assign_simple",
    "check_reduction",
    "enumerate_schedules",
    "enumerate_simple_assignments",
    "enumerate_skeletons",
    "explore_schedules",
    "hunt",
    "is_simple",
]
