"""
Schedule enumeration.

enumerate_schedules lists every pid sequence up to a length. explore_schedules walks only
the schedules in which every step does work for the given model and scripts: a no-op
step leaves the recorded execution unchanged up to renumbering of timestamps, so these
schedules reach the same executions with far fewer replays.

Both walks are depth-first in lexicographic order, each prefix before its extensions.
"""

from collections.abc import Iterator
import logging

from SnapCheck.algorithms.base import SnapshotAlgorithm
from SnapCheck.models import Execution
from SnapCheck.simulation.simulator import OpScript, Schedule, Simulator

logger = logging.getLogger(__name__)


def enumerate_schedules(n: int, max_steps: int) -> Iterator[Schedule]:
    """
    Every schedule over n processes with at most max_steps steps.

    Args:
        n: Process count (>= 2)
        max_steps: Maximum schedule length (>= 0)

    Yields:
        Schedules in depth-first lexicographic order; (n^(max_steps+1) - 1)/(n - 1) total
    """
    if n < 2:
        raise ValueError(f"Need at least 2 processes, got {n}")
    if max_steps < 0:
        raise ValueError(f"max_steps must be non-negative, got {max_steps}")

    prefix: list[int] = []

    def walk() -> Iterator[Schedule]:
        yield Schedule(tuple(prefix))
        if len(prefix) == max_steps:
            return
        for pid in range(n):
            prefix.append(pid)
            yield from walk()
            prefix.pop()

    yield from walk()


def explore_schedules(
    model: SnapshotAlgorithm,
    scripts: OpScript,
    max_steps: int,
    initial_value: int = 0,
) -> Iterator[tuple[Schedule, Execution]]:
    """
    Every no-op-free schedule of at most max_steps steps, with its execution.

    Each prefix is replayed from scratch; operation generators cannot be copied.

    Args:
        model: Algorithm to simulate
        scripts: Fully assigned scripts
        max_steps: Maximum schedule length
        initial_value: Initial update value

    Yields:
        (schedule, execution) pairs in depth-first lexicographic order
    """
    if max_steps < 0:
        raise ValueError(f"max_steps must be non-negative, got {max_steps}")

    prefix: list[int] = []

    def walk() -> Iterator[tuple[Schedule, Execution]]:
        simulator = Simulator(model, scripts, initial_value)
        result = simulator.run(Schedule(tuple(prefix)))
        yield Schedule(tuple(prefix)), result.execution
        if len(prefix) == max_steps:
            return
        for pid in result.enabled:
            prefix.append(pid)
            yield from walk()
            prefix.pop()

    yield from walk()
