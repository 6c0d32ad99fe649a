"""
Simulator - Replays a schedule against a snapshot algorithm and records the execution.

Each schedule step lets one process execute one low-level action. A process whose
script is exhausted performs a recorded no-op. An operation whose first and last
actions happen at schedule positions a <= b becomes the high-level event
(2a, 2b + 1); unfinished operations are pending from 2a. Under this encoding
E1 < E2 holds exactly when E1's last action comes before E2's first action.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any
import logging

from SnapCheck.algorithms.base import (
    Action,
    OperationCode,
    ProcessContext,
    Read,
    ReadAll,
    Return,
    SnapshotAlgorithm,
    Write,
)
from SnapCheck.models import EventKind, Execution, HighLevelEvent, make_event

logger = logging.getLogger(__name__)


class RegisterDisciplineError(RuntimeError):
    """A process wrote a register owned by another process."""


# ============================================================================
# INPUTS
# ============================================================================


@dataclass(frozen=True)
class OpRequest:
    """One operation request in a process script: scan, or update(arg)."""

    kind: EventKind
    arg: int | None = None

    def __post_init__(self):
        if self.kind is EventKind.SCAN and self.arg is not None:
            raise ValueError("Scan requests take no argument")
        if self.arg is not None and self.arg < 0:
            raise ValueError(f"Update argument must be non-negative, got {self.arg}")

    @classmethod
    def scan(cls) -> "OpRequest":
        return cls(EventKind.SCAN)

    @classmethod
    def update(cls, arg: int | None = None) -> "OpRequest":
        return cls(EventKind.UPDATE, arg)

    def __str__(self) -> str:
        if self.kind is EventKind.SCAN:
            return "scan"
        return "update" if self.arg is None else f"update({self.arg})"


@dataclass(frozen=True)
class OpScript:
    """
    Per-process operation request sequences.

    A skeleton is a script whose update requests carry no argument yet.
    """

    ops: tuple[tuple[OpRequest, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(tuple(p) for p in self.ops))
        if len(self.ops) < 1:
            raise ValueError("A script needs at least one process")

    @classmethod
    def from_lists(cls, ops: Iterable[Iterable[OpRequest]]) -> "OpScript":
        return cls(tuple(tuple(p) for p in ops))

    @classmethod
    def parse(cls, ops: Iterable[Iterable[dict[str, Any]]]) -> "OpScript":
        """Build from JSON-style dicts {"op": "scan"} / {"op": "update", "arg": 1}."""
        processes = []
        for requests in ops:
            process = []
            for request in requests:
                kind = EventKind(str(request["op"]).lower())
                process.append(OpRequest(kind, request.get("arg")))
            processes.append(tuple(process))
        return cls(tuple(processes))

    @property
    def n(self) -> int:
        return len(self.ops)

    def kinds(self) -> tuple[tuple[EventKind, ...], ...]:
        return tuple(tuple(r.kind for r in p) for p in self.ops)

    def skeleton(self) -> "OpScript":
        """The same script with every update argument removed."""
        return OpScript(tuple(tuple(OpRequest(r.kind) for r in p) for p in self.ops))

    def update_count(self, pid: int) -> int:
        return sum(1 for r in self.ops[pid] if r.kind is EventKind.UPDATE)

    def args(self) -> tuple[tuple[int | None, ...], ...]:
        """Update arguments per process, in script order."""
        return tuple(
            tuple(r.arg for r in p if r.kind is EventKind.UPDATE) for p in self.ops
        )

    def with_args(self, args: Sequence[Sequence[int]]) -> "OpScript":
        """Assign update arguments per process, in script order."""
        processes = []
        for pid, requests in enumerate(self.ops):
            values = iter(args[pid])
            processes.append(
                tuple(
                    OpRequest(EventKind.UPDATE, next(values))
                    if r.kind is EventKind.UPDATE
                    else r
                    for r in requests
                )
            )
        return OpScript(tuple(processes))

    def __str__(self) -> str:
        return " | ".join(
            f"p{pid}:[{', '.join(str(r) for r in p)}]" for pid, p in enumerate(self.ops)
        )


@dataclass(frozen=True)
class Schedule:
    """A finite sequence of process indices, one per low-level step."""

    steps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if any(pid < 0 for pid in self.steps):
            raise ValueError(f"Schedule contains a negative pid: {self.steps}")

    def check_processes(self, n: int) -> None:
        bad = [pid for pid in self.steps if pid >= n]
        if bad:
            raise ValueError(f"Schedule names pid {bad[0]} but there are {n} processes")

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " ".join(str(pid) for pid in self.steps) or "-"


# ============================================================================
# SIMULATOR
# ============================================================================


@dataclass
class _ProcessState:
    ctx: ProcessContext
    requests: tuple[OpRequest, ...]
    next_request: int = 0
    running: OperationCode | None = None
    action: Action | None = None
    request: OpRequest | None = None
    first_step: int = 0

    @property
    def has_work(self) -> bool:
        return self.running is not None or self.next_request < len(self.requests)


@dataclass
class SimulationResult:
    """
    Outcome of one schedule replay.

    Attributes:
        execution: The recorded high-level execution
        noop_steps: Schedule positions where the scheduled process had no work
        enabled: Processes that still have work after the last step
    """

    execution: Execution
    noop_steps: tuple[int, ...] = ()
    enabled: tuple[int, ...] = field(default_factory=tuple)


class Simulator:
    """
    Deterministic single-threaded interpreter of a snapshot algorithm.

    Example:
        sim = Simulator(AtomicMock(), scripts)
        for pid in schedule.steps:
            sim.step(pid)
        execution = sim.execution()
    """

    def __init__(self, model: SnapshotAlgorithm, scripts: OpScript, initial_value: int = 0):
        """
        Initialize simulator.

        Args:
            model: Algorithm to run
            scripts: Operation requests per process (arity = process count)
            initial_value: Value of every process's initial update
        """
        self.model = model
        self.scripts = scripts
        self.n = scripts.n
        self.initial_value = initial_value
        self.registers: list[Any] = [
            model.initial_register(pid, initial_value) for pid in range(self.n)
        ]
        self.processes = [
            _ProcessState(ProcessContext(pid, self.n), scripts.ops[pid])
            for pid in range(self.n)
        ]
        self.position = 0
        self.events: list[HighLevelEvent] = []
        self.noop_steps: list[int] = []

    def enabled(self) -> list[int]:
        """Processes that would execute an action if scheduled now."""
        return [p.ctx.pid for p in self.processes if p.has_work]

    def _execute(self, pid: int, action: Action) -> Any:
        match action:
            case Read(register=register):
                return self.registers[register]
            case ReadAll():
                return tuple(self.registers)
            case Write(register=register, content=content):
                if register != pid:
                    raise RegisterDisciplineError(
                        f"{self.model.name}: p{pid} wrote register {register}"
                    )
                self.registers[register] = content
                return None
            case Return():
                return None
        raise TypeError(f"{self.model.name}: unknown action {action!r}")

    def _invoke(self, state: _ProcessState) -> None:
        request = state.requests[state.next_request]
        state.next_request += 1
        if request.kind is EventKind.SCAN:
            code = self.model.scan(state.ctx)
        else:
            if request.arg is None:
                raise ValueError(f"p{state.ctx.pid} update request has no argument")
            code = self.model.update(state.ctx, request.arg)
        try:
            state.action = next(code)
        except StopIteration:
            raise RuntimeError(
                f"{self.model.name}: {request} finished without any action"
            ) from None
        state.running = code
        state.request = request
        state.first_step = self.position

    def step(self, pid: int) -> bool:
        """
        Let process pid execute one action.

        Returns:
            False if pid had no work (a recorded no-op)
        """
        if not 0 <= pid < self.n:
            raise ValueError(f"pid {pid} not in [0, {self.n})")
        state = self.processes[pid]
        if not state.has_work:
            self.noop_steps.append(self.position)
            self.position += 1
            return False

        if state.running is None:
            self._invoke(state)

        result = self._execute(pid, state.action)
        try:
            state.action = state.running.send(result)
        except StopIteration as done:
            self._complete(state, done.value)
        self.position += 1
        return True

    def _complete(self, state: _ProcessState, value: Any) -> None:
        request = state.request
        ret = tuple(value) if request.kind is EventKind.SCAN else None
        self.events.append(
            make_event(
                state.ctx.pid,
                request.kind,
                2 * state.first_step,
                2 * self.position + 1,
                arg=request.arg,
                ret=ret,
            )
        )
        state.running = None
        state.action = None
        state.request = None

    def run(self, schedule: Schedule) -> SimulationResult:
        """Execute every step of schedule and return the recorded execution."""
        schedule.check_processes(self.n)
        for pid in schedule.steps:
            self.step(pid)
        return self.result()

    def execution(self) -> Execution:
        """The execution so far; operations still running are pending."""
        events = list(self.events)
        for state in self.processes:
            if state.running is not None:
                events.append(
                    make_event(
                        state.ctx.pid,
                        state.request.kind,
                        2 * state.first_step,
                        None,
                        arg=state.request.arg,
                    )
                )
        return Execution.build(self.n, events, initial_value=self.initial_value)

    def result(self) -> SimulationResult:
        return SimulationResult(
            execution=self.execution(),
            noop_steps=tuple(self.noop_steps),
            enabled=tuple(self.enabled()),
        )


def run(
    model: SnapshotAlgorithm,
    schedule: Schedule,
    scripts: OpScript,
    initial_value: int = 0,
) -> Execution:
    """
    Replay schedule against model and scripts.

    Args:
        model: Algorithm to simulate
        schedule: Process index per step
        scripts: Operation requests per process
        initial_value: Initial update value

    Returns:
        The recorded execution (a pure function of the inputs)
    """
    return Simulator(model, scripts, initial_value).run(schedule).execution
