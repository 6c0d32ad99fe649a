"""
Trace Validation - Structural checks on executions before they reach the checkers.

Checks:
1. Events of one process do not overlap, and a pending event is its process's last
2. Exactly one initial update per process, preceding every other event
3. Scan return vectors have arity n; updates carry an argument
4. Timestamps are distinct, start < end, pids lie in [0, n)
"""

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
import logging

from SnapCheck.models import Execution, HighLevelEvent, precedes

logger = logging.getLogger(__name__)


class FindingCode(Enum):
    """Kinds of structural problems"""

    INTRA_PROCESS_OVERLAP = "intra-process overlap"
    PENDING_NOT_LAST = "pending not last"
    MISSING_INITIAL = "missing initial update"
    DUPLICATE_INITIAL = "duplicate initial update"
    INITIAL_NOT_FIRST = "initial update does not precede"
    ARITY_MISMATCH = "arity mismatch"
    DUPLICATE_TIMESTAMP = "duplicate timestamp"
    START_NOT_BEFORE_END = "start not before end"
    PID_OUT_OF_RANGE = "pid out of range"
    MISSING_ARGUMENT = "missing argument"
    MISSING_RETURN = "missing return"
    UNEXPECTED_FIELD = "unexpected field"


@dataclass(frozen=True)
class Finding:
    """One violated structural invariant and the events involved."""

    code: FindingCode
    message: str
    event_ids: tuple[str, ...] = ()

    def __str__(self) -> str:
        events = ",".join(self.event_ids) if self.event_ids else "-"
        return f"INVALID {self.code.value} events={events}: {self.message}"


@dataclass
class ValidationReport:
    """Findings of validate(); empty iff the execution is well-formed."""

    findings: list[Finding] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.findings

    def codes(self) -> list[FindingCode]:
        return [f.code for f in self.findings]

    def add(self, code: FindingCode, message: str, *events: HighLevelEvent) -> None:
        self.findings.append(Finding(code, message, tuple(e.id for e in events)))

    def __len__(self) -> int:
        return len(self.findings)


def _check_event_fields(execution: Execution, event: HighLevelEvent, report: ValidationReport) -> None:
    if not 0 <= event.pid < execution.n:
        report.add(
            FindingCode.PID_OUT_OF_RANGE, f"pid {event.pid} not in [0, {execution.n})", event
        )
    if event.is_complete and not event.start < event.end:
        report.add(
            FindingCode.START_NOT_BEFORE_END, f"start {event.start} >= end {event.end}", event
        )

    if event.is_update:
        if event.arg is None:
            report.add(FindingCode.MISSING_ARGUMENT, "update without arg", event)
        if event.ret is not None:
            report.add(FindingCode.UNEXPECTED_FIELD, "update with ret", event)
        return

    if event.arg is not None:
        report.add(FindingCode.UNEXPECTED_FIELD, "scan with arg", event)
    if event.is_pending:
        if event.ret is not None:
            report.add(FindingCode.UNEXPECTED_FIELD, "pending scan with ret", event)
    elif event.ret is None:
        report.add(FindingCode.MISSING_RETURN, "complete scan without ret", event)
    elif len(event.ret) != execution.n:
        report.add(
            FindingCode.ARITY_MISMATCH,
            f"ret has {len(event.ret)} entries, expected {execution.n}",
            event,
        )


def _check_process_order(execution: Execution, report: ValidationReport) -> None:
    by_pid: dict[int, list[HighLevelEvent]] = defaultdict(list)
    for event in execution.events:
        by_pid[event.pid].append(event)

    for pid, events in sorted(by_pid.items()):
        # consecutive pairs suffice: non-overlap is transitive along start order
        for earlier, later in zip(events, events[1:]):
            if earlier.is_pending:
                report.add(
                    FindingCode.PENDING_NOT_LAST,
                    f"p{pid} has events after pending {earlier.id}",
                    earlier,
                    later,
                )
            elif not precedes(earlier, later):
                report.add(
                    FindingCode.INTRA_PROCESS_OVERLAP,
                    f"p{pid} events overlap",
                    earlier,
                    later,
                )


def _check_initials(execution: Execution, report: ValidationReport) -> None:
    initials: dict[int, list[HighLevelEvent]] = defaultdict(list)
    for event in execution.initial:
        initials[event.pid].append(event)

    for pid in range(execution.n):
        if not initials.get(pid):
            report.findings.append(
                Finding(FindingCode.MISSING_INITIAL, f"no initial update for p{pid}")
            )
        elif len(initials[pid]) > 1:
            report.add(
                FindingCode.DUPLICATE_INITIAL,
                f"p{pid} has {len(initials[pid])} initial updates",
                *initials[pid],
            )

    for event in execution.body:
        late = [init for init in execution.initial if not precedes(init, event)]
        if late:
            report.add(
                FindingCode.INITIAL_NOT_FIRST,
                f"{event.id} is not preceded by every initial update",
                *late,
                event,
            )


def _check_timestamps(execution: Execution, report: ValidationReport) -> None:
    owners: dict[int | float, list[HighLevelEvent]] = defaultdict(list)
    for event in execution.events:
        owners[event.start].append(event)
        if event.is_complete:
            owners[event.end].append(event)

    for stamp, events in sorted(owners.items()):
        if len(events) > 1:
            unique = list(dict.fromkeys(events))
            report.add(
                FindingCode.DUPLICATE_TIMESTAMP,
                f"timestamp {stamp} used {len(events)} times",
                *unique,
            )


def validate(execution: Execution) -> ValidationReport:
    """
    Report every violated structural invariant of an execution.

    Args:
        execution: Parsed or simulated execution

    Returns:
        ValidationReport, empty iff the execution is well-formed
    """
    report = ValidationReport()

    ids = [e.id for e in execution.events]
    if len(set(ids)) != len(ids):
        logger.warning(f"Duplicate event ids in {execution!r}")

    for event in execution.events:
        _check_event_fields(execution, event, report)
    _check_process_order(execution, report)
    _check_initials(execution, report)
    _check_timestamps(execution, report)

    if report.findings:
        logger.debug(f"Validation found {len(report)} problem(s) in {execution!r}")
    return report
