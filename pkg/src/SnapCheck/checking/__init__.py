"""Linearizability checking: validation, alpha witnesses, linearization, oracle."""

from .validation import Finding, FindingCode, ValidationReport, validate
from .alpha import (
    AlphaAssignment,
    AlphaMismatchError,
    Diagnosis,
    PropertyViolation,
    alpha_less,
    check_properties,
    diagnose,
    iter_correct_alphas,
    replay_violation,
    search_alpha,
)
from .linearizer import (
    Cycle,
    CyclicInputError,
    TotalOrder,
    TriangleRelation,
    ViolatingAlphaError,
    build_linearization,
    build_triangle,
    check_sequential_spec,
    has_cycle,
    lemma_breaches,
    sample_linearizations,
)
from .oracle import BoundExceededError, LinearizationCandidate, oracle_linearizable

__all__ = [
    "AlphaAssignment",
    "AlphaMismatchError",
    "BoundExceededError",
    "Cycle",
    "CyclicInputError",
    "Diagnosis",
    "Finding",
    "FindingCode",
    "LinearizationCandidate",
    "PropertyViolation",
    "TotalOrder",
    "TriangleRelation",
    "ValidationReport",
    "ViolatingAlphaError",
    "alpha_less",
    "build_linearization",
    "build_triangle",
    "check_properties",
    "check_sequential_spec",
    "diagnose",
    "has_cycle",
    "iter_correct_alphas",
    "lemma_breaches",
    "oracle_linearizable",
    "replay_violation",
    "sample_linearizations",
    "search_alpha",
    "validate",
]
