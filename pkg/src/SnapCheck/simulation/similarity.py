"""
Similarity - Revalued runs and the schedule-based probe.

Two runs are similar when they follow the same schedule over scripts with the same
operation kinds and differ only in update arguments. A schedule-based algorithm produces
similar runs with identical event boundaries, and each scan entry reports the value of
the same update in every one of them.

probe_schedule_based can refute this for a finite set of variants; it cannot prove it.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
import logging

from SnapCheck.algorithms.base import SnapshotAlgorithm
from SnapCheck.models import EventKind, Execution
from SnapCheck.simulation.simulator import OpRequest, OpScript, Schedule, run

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimilarityVariant:
    """
    A base (schedule, scripts) with some update arguments replaced.

    revaluation maps (pid, index of the request in p_pid's script) to the new argument;
    only update requests may be revalued.
    """

    schedule: Schedule
    scripts: OpScript
    revaluation: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (pid, index), value in self.revaluation.items():
            if not 0 <= pid < self.scripts.n or not 0 <= index < len(self.scripts.ops[pid]):
                raise ValueError(f"Revaluation names a missing request p{pid}[{index}]")
            if self.scripts.ops[pid][index].kind is not EventKind.UPDATE:
                raise ValueError(f"Request p{pid}[{index}] is a scan and has no argument")
            if value < 0:
                raise ValueError(f"Revalued argument must be non-negative, got {value}")

    @classmethod
    def with_args(
        cls, schedule: Schedule, scripts: OpScript, args: Sequence[Sequence[int]]
    ) -> "SimilarityVariant":
        """Variant assigning `args[pid]` to p_pid's updates in script order."""
        revaluation = {}
        for pid, requests in enumerate(scripts.ops):
            values = iter(args[pid])
            for index, request in enumerate(requests):
                if request.kind is EventKind.UPDATE:
                    revaluation[(pid, index)] = next(values)
        return cls(schedule, scripts, revaluation)

    def revalued_scripts(self) -> OpScript:
        return OpScript(
            tuple(
                tuple(
                    OpRequest(EventKind.UPDATE, self.revaluation[(pid, index)])
                    if (pid, index) in self.revaluation
                    else request
                    for index, request in enumerate(requests)
                )
                for pid, requests in enumerate(self.scripts.ops)
            )
        )


@dataclass
class ProbeOutcome:
    """
    Result of probing one base run against its variants.

    Attributes:
        same_boundaries: Every variant has the base's (pid, kind, start, end) skeleton
        consistent_sources: Every scan entry has an update whose value it reports in
            every run
        unexplained: (scan id, i) entries without a common source update
    """

    same_boundaries: bool
    consistent_sources: bool
    unexplained: list[tuple[str, int]] = field(default_factory=list)

    @property
    def schedule_based(self) -> bool:
        return self.same_boundaries and self.consistent_sources


def _common_sources(runs: Sequence[Execution]) -> list[tuple[str, int]]:
    base = runs[0]
    unexplained = []
    for scan in base.complete_scans:
        for i in range(base.n):
            sources = [
                u
                for u in base.updates_of(i)
                if all(r.event(u.id).arg == r.event(scan.id).ret[i] for r in runs)
            ]
            if not sources:
                unexplained.append((scan.id, i))
    return unexplained


def probe(
    model: SnapshotAlgorithm,
    schedule: Schedule,
    scripts: OpScript,
    variants: Sequence[SimilarityVariant],
) -> ProbeOutcome:
    """
    Run the base and every variant and compare them.

    Raises:
        ValueError: a variant is not derived from (schedule, scripts)
    """
    for variant in variants:
        if variant.schedule != schedule or variant.scripts.kinds() != scripts.kinds():
            raise ValueError("Variant is not derived from the probed schedule and scripts")

    base = run(model, schedule, scripts)
    runs = [base] + [run(model, schedule, v.revalued_scripts()) for v in variants]

    if any(r.skeleton() != base.skeleton() for r in runs[1:]):
        logger.debug(f"{model.name}: event boundaries differ across similar runs")
        return ProbeOutcome(same_boundaries=False, consistent_sources=False)

    unexplained = _common_sources(runs)
    if unexplained:
        logger.debug(f"{model.name}: no common source for {unexplained}")
    return ProbeOutcome(
        same_boundaries=True,
        consistent_sources=not unexplained,
        unexplained=unexplained,
    )


def probe_schedule_based(
    model: SnapshotAlgorithm,
    schedule: Schedule,
    scripts: OpScript,
    variants: Sequence[SimilarityVariant],
) -> bool:
    """
    False iff the variants refute schedule-basedness of model on this base run.

    With no variants the probe is vacuously true.
    """
    return probe(model, schedule, scripts, variants).schedule_based
