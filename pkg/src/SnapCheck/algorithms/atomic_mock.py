"""
Atomic Mock - Scan reads every segment in one atomic step.

Linearizable by construction: every scan can be placed at its single read.
"""

from SnapCheck.algorithms.base import (
    OperationCode,
    ProcessContext,
    ReadAll,
    Return,
    SnapshotAlgorithm,
    Write,
)


class AtomicMock(SnapshotAlgorithm):
    """Reference model with an atomic collect."""

    def update(self, ctx: ProcessContext, value: int) -> OperationCode:
        yield Write(ctx.pid, value)
        yield Return()

    def scan(self, ctx: ProcessContext) -> OperationCode:
        view = yield ReadAll()
        return tuple(view)
