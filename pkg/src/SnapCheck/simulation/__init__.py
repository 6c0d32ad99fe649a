"""Schedule-driven simulation of snapshot algorithms."""

from .simulator import (
    OpRequest,
    OpScript,
    RegisterDisciplineError,
    Schedule,
    SimulationResult,
    Simulator,
    run,
)
from .similarity import ProbeOutcome, SimilarityVariant, probe, probe_schedule_based

__all__ = [
    "OpRequest",
    "OpScript",
    "ProbeOutcome",
    "RegisterDisciplineError",
    "Schedule",
    "SimilarityVariant",
    "SimulationResult",
    "Simulator",
    "probe",
    "probe_schedule_based",
    "run",
]
