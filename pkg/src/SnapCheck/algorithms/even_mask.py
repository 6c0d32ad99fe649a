"""
Even Mask - Atomic scan that reports 0 in place of any non-zero even value.

Behaves exactly like AtomicMock when only 0 and 1 are written, and returns values
nobody wrote as soon as an update writes 2. Its scan results depend on update
arguments, so it is a fixture for the schedule-based probe and the reduction check.
"""

from SnapCheck.algorithms.base import (
    OperationCode,
    ProcessContext,
    ReadAll,
    Return,
    SnapshotAlgorithm,
    Write,
)


class EvenMask(SnapshotAlgorithm):
    """Atomic collect with a value-dependent output filter."""

    schedule_based = False

    def update(self, ctx: ProcessContext, value: int) -> OperationCode:
        yield Write(ctx.pid, value)
        yield Return()

    def scan(self, ctx: ProcessContext) -> OperationCode:
        view = yield ReadAll()
        return tuple(0 if value and value % 2 == 0 else value for value in view)
