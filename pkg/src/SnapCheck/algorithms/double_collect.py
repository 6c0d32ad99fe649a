"""
Double Collect - Scan repeats collects until two consecutive ones agree.

DoubleCollectSeq tags every write with a per-process sequence number, so two equal
collects mean no write happened in between and the scan can be linearized between
them. Retries are unbounded; a scan that keeps seeing writes stays pending.

DoubleCollectValue compares plain values. A write of the value already present goes
unnoticed, so its scans take a different number of steps depending on the update
arguments and it is not schedule-based.
"""

from typing import Any

from SnapCheck.algorithms.base import (
    OperationCode,
    ProcessContext,
    Read,
    Return,
    SnapshotAlgorithm,
    Write,
)


def _collect(ctx: ProcessContext) -> OperationCode:
    view = []
    for register in range(ctx.n):
        view.append((yield Read(register)))
    return tuple(view)


class DoubleCollectSeq(SnapshotAlgorithm):
    """Double collect over (seq, value) registers."""

    def initial_register(self, pid: int, value: int) -> Any:
        return (0, value)

    def update(self, ctx: ProcessContext, value: int) -> OperationCode:
        seq = ctx.local.get("seq", 0) + 1
        ctx.local["seq"] = seq
        yield Write(ctx.pid, (seq, value))
        yield Return()

    def scan(self, ctx: ProcessContext) -> OperationCode:
        previous = yield from _collect(ctx)
        while True:
            current = yield from _collect(ctx)
            if current == previous:
                return tuple(value for _, value in current)
            previous = current


class DoubleCollectValue(SnapshotAlgorithm):
    """Double collect comparing values only."""

    schedule_based = False

    def update(self, ctx: ProcessContext, value: int) -> OperationCode:
        yield Write(ctx.pid, value)
        yield Return()

    def scan(self, ctx: ProcessContext) -> OperationCode:
        previous = yield from _collect(ctx)
        while True:
            current = yield from _collect(ctx)
            if current == previous:
                return current
            previous = current
