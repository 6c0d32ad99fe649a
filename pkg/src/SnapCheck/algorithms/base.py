"""
Base class for snapshot algorithms.

An algorithm describes each high-level operation as a generator of low-level actions.
The simulator drives the generator one action per schedule step, sends back the result
of the action (the register contents for reads, None otherwise), and treats the
generator's return value as the operation's result.

Every operation must yield at least one action. Process i may only write register i.
"""

from abc import ABC, abstractmethod
from collections.abc import Generator
from dataclasses import dataclass, field
from typing import Any
import logging

logger = logging.getLogger(__name__)


# ============================================================================
# LOW-LEVEL ACTIONS
# ============================================================================


@dataclass(frozen=True)
class Read:
    """Read one shared register."""

    register: int


@dataclass(frozen=True)
class ReadAll:
    """Read every shared register in one atomic step."""


@dataclass(frozen=True)
class Write:
    """Write the caller's own register."""

    register: int
    content: Any


@dataclass(frozen=True)
class Return:
    """Local step that ends an operation without touching shared memory."""


Action = Read | ReadAll | Write | Return

OperationCode = Generator[Action, Any, tuple[int, ...] | None]


@dataclass
class ProcessContext:
    """
    Per-process state that survives across operations.

    Attributes:
        pid: Process index
        n: Number of processes (and registers)
        local: Algorithm-defined local variables (sequence counters, ...)
    """

    pid: int
    n: int
    local: dict[str, Any] = field(default_factory=dict)


class SnapshotAlgorithm(ABC):
    """
    Abstract base class for simulated snapshot implementations.

    Subclasses implement update() and scan() as generators over low-level actions.

    Example:
        class Atomic(SnapshotAlgorithm):
            def update(self, ctx, value):
                yield Write(ctx.pid, value)
                yield Return()

            def scan(self, ctx):
                view = yield ReadAll()
                return tuple(view)
    """

    #: True when scan results depend only on the interleaving and the operation kinds
    schedule_based: bool = True

    def __init__(self, name: str | None = None):
        """
        Initialize algorithm.

        Args:
            name: Model name (defaults to class name)
        """
        self.name = name or self.__class__.__name__

    def initial_register(self, pid: int, value: int) -> Any:
        """Register content representing process pid's initial update."""
        return value

    @abstractmethod
    def update(self, ctx: ProcessContext, value: int) -> OperationCode:
        """Low-level actions of update(value) by ctx.pid."""

    @abstractmethod
    def scan(self, ctx: ProcessContext) -> OperationCode:
        """Low-level actions of a scan; returns the n-vector of values."""

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r})"
