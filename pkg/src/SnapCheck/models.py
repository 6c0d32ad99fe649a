"""
Trace model - executions of snapshot implementations.

An execution is a finite set of high-level events (scan and update operations) over n
processes. Each event is a pair of integer timestamps standing for the indices of its
first and last low-level actions; a pending event has no last action and ends at PENDING.
Every execution carries n synthetic initial updates that precede all other events.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
import logging
import math

logger = logging.getLogger(__name__)

# End timestamp of an operation that never returned.
PENDING = math.inf

# Segment values. Simple executions only use 0 and 1.
Value = int


# ============================================================================
# ENUMS
# ============================================================================


class EventKind(Enum):
    """High-level operation kinds of a snapshot object"""

    SCAN = "scan"
    UPDATE = "update"


# ============================================================================
# EVENTS
# ============================================================================


@dataclass(frozen=True)
class HighLevelEvent:
    """
    One scan or update operation of one process.

    Fields:
        id: Unique identifier inside its execution (e.g. 'p0.1', 'p1.init')
        pid: Process index in [0, n)
        kind: SCAN or UPDATE
        start: Timestamp of the first low-level action
        end: Timestamp of the last low-level action, or PENDING
        arg: Update argument (updates only)
        ret: Returned vector (complete scans only)
        initial: True for the synthetic initial updates
    """

    id: str
    pid: int
    kind: EventKind
    start: int
    end: int | float = PENDING
    arg: Value | None = None
    ret: tuple[Value, ...] | None = None
    initial: bool = False

    @property
    def is_pending(self) -> bool:
        return self.end == PENDING

    @property
    def is_complete(self) -> bool:
        return self.end != PENDING

    @property
    def is_scan(self) -> bool:
        return self.kind is EventKind.SCAN

    @property
    def is_update(self) -> bool:
        return self.kind is EventKind.UPDATE

    def __str__(self) -> str:
        end = "pending" if self.is_pending else str(self.end)
        detail = f"({self.arg})" if self.is_update else (f"->{self.ret}" if self.ret else "")
        return f"{self.id}:{self.kind.value}{detail}[{self.start},{end}]"


def make_event(
    pid: int,
    kind: EventKind | str,
    start: int,
    end: int | float | None = None,
    arg: Value | None = None,
    ret: Iterable[Value] | None = None,
) -> HighLevelEvent:
    """
    Convenience constructor for a non-initial event.

    The id is left blank; Execution.build assigns ids in per-process start order.
    `end=None` means pending.
    """
    return HighLevelEvent(
        id="",
        pid=pid,
        kind=EventKind(kind),
        start=start,
        end=PENDING if end is None else end,
        arg=arg,
        ret=tuple(ret) if ret is not None else None,
    )


def initial_update(pid: int, n: int, value: Value = 0) -> HighLevelEvent:
    """The synthetic initial update of process `pid`, at (-2n+2i, -2n+2i+1)."""
    return HighLevelEvent(
        id=f"p{pid}.init",
        pid=pid,
        kind=EventKind.UPDATE,
        start=-2 * n + 2 * pid,
        end=-2 * n + 2 * pid + 1,
        arg=value,
        initial=True,
    )


# ============================================================================
# EXECUTIONS
# ============================================================================


@dataclass(frozen=True)
class Execution:
    """
    A finite trace of high-level events over n processes.

    `events` holds every event, initial updates included, ordered by (start, pid).
    Instances are immutable and safe to share; use Execution.build to add the
    synthetic initial updates and derive event ids.

    Example:
        execution = Execution.build(2, [
            make_event(1, "update", 4, 9, arg=2),
            make_event(0, "update", 8, 14, arg=1),
            make_event(0, "scan", 16, 20, ret=(1, 2)),
        ])
    """

    n: int
    events: tuple[HighLevelEvent, ...]
    initial_value: Value = 0
    _index: dict[str, HighLevelEvent] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Process count must be positive, got {self.n}")
        ordered = tuple(sorted(self.events, key=lambda e: (e.start, e.pid)))
        object.__setattr__(self, "events", ordered)
        self._index.update({e.id: e for e in ordered})

    @classmethod
    def build(
        cls,
        n: int,
        events: Iterable[HighLevelEvent],
        initial_value: Value = 0,
    ) -> "Execution":
        """
        Build an execution from non-initial events.

        Adds the n synthetic initial updates and assigns ids 'p<pid>.<k>' to the
        non-initial events, k counting from 1 in per-process start order.
        """
        body = sorted((e for e in events if not e.initial), key=lambda e: (e.start, e.pid))
        counters: dict[int, int] = {}
        named = []
        for event in body:
            counters[event.pid] = counters.get(event.pid, 0) + 1
            named.append(replace(event, id=f"p{event.pid}.{counters[event.pid]}"))

        initials = [initial_update(pid, n, initial_value) for pid in range(n)]
        return cls(n=n, events=tuple(initials + named), initial_value=initial_value)

    def __iter__(self) -> Iterator[HighLevelEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, HighLevelEvent):
            return self._index.get(item.id) == item
        return item in self._index

    def event(self, event_id: str) -> HighLevelEvent:
        """Look up an event by id (KeyError if unknown)."""
        return self._index[event_id]

    @cached_property
    def initial(self) -> tuple[HighLevelEvent, ...]:
        """The synthetic initial updates."""
        return tuple(e for e in self.events if e.initial)

    @cached_property
    def body(self) -> tuple[HighLevelEvent, ...]:
        """All non-initial events."""
        return tuple(e for e in self.events if not e.initial)

    @cached_property
    def updates(self) -> tuple[HighLevelEvent, ...]:
        return tuple(e for e in self.events if e.is_update)

    @cached_property
    def scans(self) -> tuple[HighLevelEvent, ...]:
        return tuple(e for e in self.events if e.is_scan)

    @cached_property
    def complete_scans(self) -> tuple[HighLevelEvent, ...]:
        return tuple(e for e in self.scans if e.is_complete)

    @cached_property
    def pending(self) -> tuple[HighLevelEvent, ...]:
        return tuple(e for e in self.events if e.is_pending)

    def updates_of(self, pid: int) -> tuple[HighLevelEvent, ...]:
        """Updates of one process, initial update first, in start order."""
        return tuple(e for e in self.updates if e.pid == pid)

    def events_of(self, pid: int) -> tuple[HighLevelEvent, ...]:
        return tuple(e for e in self.events if e.pid == pid)

    def skeleton(self) -> tuple[tuple[int, str, int, int | float], ...]:
        """(pid, kind, start, end) of every event; equal for similar executions."""
        return tuple((e.pid, e.kind.value, e.start, e.end) for e in self.events)

    def __repr__(self) -> str:
        return (
            f"Execution(n={self.n}, events={len(self.body)}, "
            f"pending={len(self.pending)})"
        )


# ============================================================================
# PRECEDENCE
# ============================================================================


def precedes(e1: HighLevelEvent, e2: HighLevelEvent) -> bool:
    """
    Real-time precedence on high-level events: E1 < E2 iff E1 ends before E2 starts.

    Irreflexive and transitive; false whenever e1 is pending.
    """
    return e1.end < e2.start


def precedes_or_equal(e1: HighLevelEvent, e2: HighLevelEvent) -> bool:
    """E1 <= E2: the same event, or E1 < E2."""
    return e1.id == e2.id or e1.end < e2.start


def complete_events(execution: Execution) -> frozenset[HighLevelEvent]:
    """All events with a finite end, initial updates included."""
    return frozenset(e for e in execution.events if e.is_complete)
