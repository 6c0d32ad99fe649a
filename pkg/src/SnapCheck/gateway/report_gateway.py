"""
Report Gateway - Text formats of checker results.

Formats:
    Violation:      P<k> scan=<id> [scan2=<id>] i=<idx> [j=<idx>] [update=<id>]
    Linearization:  LIN <id>                      (one line per event, in order)
    Oracle verdict: LINEARIZABLE + LIN lines, or NOT_LINEARIZABLE
    Alpha file:     alpha <i> <scan-id> <update-id>
    Hunt report:    CLEAN count=<N>, or COUNTEREXAMPLE + '#' context + trace + verdict
"""

import logging
from pathlib import Path

from SnapCheck.checking.alpha import AlphaAssignment, AlphaMismatchError, PropertyViolation
from SnapCheck.checking.linearizer import TotalOrder
from SnapCheck.checking.oracle import LinearizationCandidate
from SnapCheck.checking.validation import ValidationReport
from SnapCheck.exploration.hunt import Counterexample, HuntReport
from SnapCheck.exploration.reduction import ReductionReport
from SnapCheck.gateway.trace_gateway import TraceSyntaxError, serialize_trace
from SnapCheck.models import Execution

logger = logging.getLogger(__name__)

LINEARIZABLE = "LINEARIZABLE"
NOT_LINEARIZABLE = "NOT_LINEARIZABLE"
NO_VIOLATIONS = "no violations"


def format_violations(violations: list[PropertyViolation]) -> list[str]:
    return [str(v) for v in violations] or [NO_VIOLATIONS]


def format_validation(report: ValidationReport) -> list[str]:
    return [str(f) for f in report.findings]


def format_linearization(order: TotalOrder) -> list[str]:
    return order.lines()


def format_verdict(candidate: LinearizationCandidate | None) -> list[str]:
    """Oracle verdict lines."""
    if candidate is None:
        return [NOT_LINEARIZABLE]
    return candidate.lines()


def format_alpha(alpha: AlphaAssignment) -> list[str]:
    """One 'alpha <i> <scan-id> <update-id>' line per entry."""
    return [f"alpha {i} {scan_id} {update.id}" for i, scan_id, update in alpha.items()]


def parse_alpha(text: str, execution: Execution) -> AlphaAssignment:
    """
    Parse an alpha file against the execution it refers to.

    Raises:
        TraceSyntaxError: malformed line
        AlphaMismatchError: unknown event ids
    """
    triples = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        if len(tokens) != 4 or tokens[0] != "alpha":
            raise TraceSyntaxError(
                line_number, line, "expected 'alpha <i> <scan-id> <update-id>'"
            )
        try:
            i = int(tokens[1])
        except ValueError:
            raise TraceSyntaxError(line_number, line, "index must be an integer") from None
        scan_id, update_id = tokens[2], tokens[3]
        for event_id in (scan_id, update_id):
            if event_id not in execution:
                raise AlphaMismatchError(f"line {line_number}: unknown event {event_id!r}")
        triples.append((i, scan_id, execution.event(update_id)))
    return AlphaAssignment.from_pairs(execution.n, triples)


def load_alpha(path: str | Path, execution: Execution) -> AlphaAssignment:
    alpha_path = Path(path)
    if not alpha_path.exists():
        raise FileNotFoundError(f"Alpha file not found: {alpha_path}")
    return parse_alpha(alpha_path.read_text(encoding="utf-8"), execution)


def _counterexample_lines(found: Counterexample) -> list[str]:
    lines = [
        f"# model={found.model} schedule={found.schedule}",
        f"# scripts {found.scripts}",
    ]
    if found.params is not None:
        lines.append(f"# simple {found.params}")
    if found.oracle_verdict is None:
        lines.append("# oracle: not run (bound exceeded)")
    lines.extend(serialize_trace(found.execution).splitlines())
    lines.append(NOT_LINEARIZABLE)
    lines.extend(found.diagnosis.lines())
    return lines


def format_hunt_report(report: HuntReport) -> list[str]:
    if report.clean:
        return [f"CLEAN count={report.checked}"]
    return ["COUNTEREXAMPLE", *_counterexample_lines(report.counterexample)]


def format_reduction_report(report: ReductionReport) -> list[str]:
    """Summary line, breach lines, then the first general counterexample if any."""
    status = "HOLDS" if report.holds else "BREACH"
    simple = "CLEAN" if report.simple_report is None or report.simple_report.clean else "COUNTEREXAMPLE"
    domain = ",".join(str(v) for v in report.value_domain)
    lines = [
        f"REDUCTION {status} checked={report.checked} "
        f"general={report.general_counterexamples} simple={simple} domain={domain}"
    ]
    lines.extend(str(breach) for breach in report.breaches)
    if report.first_general is not None:
        lines.append("GENERAL_COUNTEREXAMPLE")
        lines.extend(_counterexample_lines(report.first_general))
    return lines


def write_report(lines: list[str], path: str | Path | None = None) -> str:
    """Join report lines; also write them to path when given."""
    text = "\n".join(lines) + "\n"
    if path is not None:
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info(f"Report written to {out}")
    return text
