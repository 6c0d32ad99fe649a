"""
Single Collect - Scan reads the segments one per step, in index order.

Not linearizable for three or more processes: a scan can see a later write of one
process while missing an earlier write of another. With two processes the scan has a
single foreign read and can be linearized there.
"""

from SnapCheck.algorithms.base import (
    OperationCode,
    ProcessContext,
    Read,
    Return,
    SnapshotAlgorithm,
    Write,
)


class SingleCollect(SnapshotAlgorithm):
    """Naive collect without any retry."""

    def update(self, ctx: ProcessContext, value: int) -> OperationCode:
        yield Write(ctx.pid, value)
        yield Return()

    def scan(self, ctx: ProcessContext) -> OperationCode:
        view = []
        for register in range(ctx.n):
            view.append((yield Read(register)))
        return tuple(view)
