"""
Trace Gateway - Reads and writes execution traces in the text trace format.

Format (UTF-8):
    # comment lines and trailing comments start with '#'
    n=<process count>
    init=<value>                       (optional, default 0)
    <pid> <kind> <start> <end|pending> [arg=<int>] [ret=<int,...,int>]

Initial updates are never written; they are synthesized on parse. Serialization lists
the non-initial events sorted by start timestamp, so parse and serialize round-trip.
"""

import logging
from pathlib import Path

from SnapCheck.models import EventKind, Execution, HighLevelEvent, make_event

logger = logging.getLogger(__name__)


class TraceSyntaxError(ValueError):
    """A trace line could not be parsed."""

    def __init__(self, line_number: int, line: str, reason: str):
        self.line_number = line_number
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}: {line.strip()!r}")


def _parse_int(token: str, what: str, line_number: int, line: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise TraceSyntaxError(line_number, line, f"{what} must be an integer") from None


def _parse_header(
    key: str, line_number: int, line: str, stripped: str
) -> int | None:
    if not stripped.startswith(f"{key}="):
        return None
    return _parse_int(stripped[len(key) + 1 :].strip(), key, line_number, line)


def _parse_event(line_number: int, line: str, stripped: str) -> HighLevelEvent:
    tokens = stripped.split()
    if len(tokens) < 4:
        raise TraceSyntaxError(
            line_number, line, "expected '<pid> <kind> <start> <end|pending>'"
        )

    pid = _parse_int(tokens[0], "pid", line_number, line)
    try:
        kind = EventKind(tokens[1].lower())
    except ValueError:
        raise TraceSyntaxError(
            line_number, line, f"unknown kind {tokens[1]!r} (expected scan or update)"
        ) from None
    start = _parse_int(tokens[2], "start", line_number, line)
    end = None if tokens[3].lower() == "pending" else _parse_int(
        tokens[3], "end", line_number, line
    )

    arg: int | None = None
    ret: tuple[int, ...] | None = None
    for token in tokens[4:]:
        key, sep, value = token.partition("=")
        if not sep:
            raise TraceSyntaxError(line_number, line, f"unexpected token {token!r}")
        if key == "arg":
            if arg is not None:
                raise TraceSyntaxError(line_number, line, "arg given twice")
            arg = _parse_int(value, "arg", line_number, line)
        elif key == "ret":
            if ret is not None:
                raise TraceSyntaxError(line_number, line, "ret given twice")
            parts = value.strip("()").split(",")
            ret = tuple(_parse_int(p, "ret entry", line_number, line) for p in parts)
        else:
            raise TraceSyntaxError(line_number, line, f"unknown field {key!r}")

    return make_event(pid, kind, start, end, arg=arg, ret=ret)


def parse_trace(text: str) -> Execution:
    """
    Parse a trace into an Execution with synthetic initial updates.

    Only syntax is checked here; structural problems (overlaps, arity, ...) are
    reported by SnapCheck.checking.validation.validate.

    Args:
        text: Trace file contents

    Returns:
        Parsed Execution

    Raises:
        TraceSyntaxError: naming the first malformed line
    """
    n: int | None = None
    initial_value = 0
    events: list[HighLevelEvent] = []

    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue

        if n is None:
            n = _parse_header("n", line_number, line, stripped)
            if n is None:
                raise TraceSyntaxError(line_number, line, "expected header 'n=<int>'")
            if n < 1:
                raise TraceSyntaxError(line_number, line, "n must be positive")
            continue

        value = _parse_header("init", line_number, line, stripped)
        if value is not None:
            if events:
                raise TraceSyntaxError(
                    line_number, line, "init= must come before the first event"
                )
            initial_value = value
            continue

        events.append(_parse_event(line_number, line, stripped))

    if n is None:
        raise TraceSyntaxError(0, "", "missing header 'n=<int>'")

    execution = Execution.build(n, events, initial_value=initial_value)
    logger.debug(f"Parsed trace: {execution!r}")
    return execution


def format_event(event: HighLevelEvent) -> str:
    """One trace line for a non-initial event."""
    end = "pending" if event.is_pending else str(int(event.end))
    parts = [str(event.pid), event.kind.value, str(event.start), end]
    if event.arg is not None:
        parts.append(f"arg={event.arg}")
    if event.ret is not None:
        parts.append("ret=" + ",".join(str(v) for v in event.ret))
    return " ".join(parts)


def serialize_trace(execution: Execution) -> str:
    """Serialize an execution in the trace format (inverse of parse_trace)."""
    lines = [f"n={execution.n}"]
    if execution.initial_value != 0:
        lines.append(f"init={execution.initial_value}")
    lines.extend(format_event(e) for e in execution.body)
    return "\n".join(lines) + "\n"


def load_trace(path: str | Path) -> Execution:
    """Read and parse a trace file."""
    trace_path = Path(path)
    if not trace_path.exists():
        raise FileNotFoundError(f"Trace file not found: {trace_path}")
    return parse_trace(trace_path.read_text(encoding="utf-8"))


def save_trace(execution: Execution, path: str | Path) -> Path:
    """Write an execution to a trace file, creating parent directories."""
    trace_path = Path(path)
    trace_path.parent.mkdir(parents=True, exist_ok=True)
    trace_path.write_text(serialize_trace(execution), encoding="utf-8")
    return trace_path
