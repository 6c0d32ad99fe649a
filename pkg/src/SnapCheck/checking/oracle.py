"""
Linearizability Oracle - Brute-force decision procedure, independent of the alpha checker.

For every choice of pending events to keep (smallest choices first), searches the linear
extensions of real-time precedence over complete events + chosen pending events for one
that satisfies the snapshot sequential specification. The pruned search places events
one at a time, refuses a complete scan whose return value disagrees with the updates
placed so far, and remembers placed-sets that already failed.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations, permutations
import logging

from SnapCheck.checking.linearizer import TotalOrder, check_sequential_spec
from SnapCheck.config import oracle_bound_from_env
from SnapCheck.models import Execution, HighLevelEvent, precedes

logger = logging.getLogger(__name__)


class BoundExceededError(RuntimeError):
    """The execution has more non-initial events than the oracle accepts."""

    def __init__(self, count: int, bound: int):
        self.count = count
        self.bound = bound
        super().__init__(
            f"Oracle bound exceeded: {count} non-initial events > bound {bound} "
            f"(raise SNAPCHECK_ORACLE_BOUND to allow more)"
        )


@dataclass(frozen=True)
class LinearizationCandidate:
    """A linearization witness: the chosen event set and its order."""

    chosen: frozenset[str]
    order: TotalOrder

    def lines(self) -> list[str]:
        return ["LINEARIZABLE", *self.order.lines()]


class _PrunedSearch:
    """Depth-first placement with a memo of dead placed-sets (bitmasks)."""

    def __init__(self, execution: Execution, events: list[HighLevelEvent]):
        self.n = execution.n
        self.events = sorted(events, key=lambda e: (e.start, e.pid))
        index = {e.id: k for k, e in enumerate(self.events)}
        self.required = [0] * len(self.events)
        for e in self.events:
            for d in self.events:
                if precedes(d, e):
                    self.required[index[e.id]] |= 1 << index[d.id]
        self.full = (1 << len(self.events)) - 1
        self.dead: set[int] = set()
        self.sequence: list[str] = []
        self.latest: list[int | None] = [None] * self.n
        self.nodes = 0

    def run(self) -> list[str] | None:
        return list(self.sequence) if self._place(0) else None

    def _place(self, placed: int) -> bool:
        if placed == self.full:
            return True
        if placed in self.dead:
            return False
        self.nodes += 1

        for k, event in enumerate(self.events):
            bit = 1 << k
            if placed & bit or self.required[k] & ~placed:
                continue
            if event.is_scan and event.is_complete and event.ret != tuple(self.latest):
                continue

            previous = self.latest[event.pid]
            if event.is_update:
                self.latest[event.pid] = event.arg
            self.sequence.append(event.id)
            if self._place(placed | bit):
                return True
            self.sequence.pop()
            self.latest[event.pid] = previous

        # the latest value of every process is a function of the placed-set
        self.dead.add(placed)
        return False


def _unpruned_order(execution: Execution, events: list[HighLevelEvent]) -> list[str] | None:
    initials = [e.id for e in execution.initial]
    rest = [e.id for e in events if not e.initial]
    for tail in permutations(rest):
        candidate = TotalOrder(tuple(initials) + tail)
        if check_sequential_spec(execution, candidate):
            return list(candidate.sequence)
    return None


def _subsets(pending: list[HighLevelEvent]) -> Iterable[tuple[HighLevelEvent, ...]]:
    for size in range(len(pending) + 1):
        yield from combinations(pending, size)


def oracle_linearizable(
    execution: Execution, bound: int | None = None, prune: bool = True
) -> LinearizationCandidate | None:
    """
    Decide linearizability by exhaustive search.

    Args:
        execution: Validated execution
        bound: Max non-initial events (defaults to SNAPCHECK_ORACLE_BOUND, else 12)
        prune: False enumerates raw permutations, as a reference for tiny traces

    Returns:
        The first witness found, or None if the execution is not linearizable

    Raises:
        BoundExceededError: more non-initial events than the bound
    """
    limit = oracle_bound_from_env() if bound is None else bound
    count = len(execution.body)
    if count > limit:
        raise BoundExceededError(count, limit)

    complete = [e for e in execution.events if e.is_complete]
    pending = list(execution.pending)

    for kept in _subsets(pending):
        events = complete + list(kept)
        if prune:
            search = _PrunedSearch(execution, events)
            sequence = search.run()
        else:
            sequence = _unpruned_order(execution, events)
        if sequence is not None:
            candidate = LinearizationCandidate(
                chosen=frozenset(e.id for e in events), order=TotalOrder(tuple(sequence))
            )
            logger.debug(f"Oracle: {execution!r} linearizable, kept {len(kept)} pending")
            return candidate

    logger.debug(f"Oracle: {execution!r} not linearizable")
    return None
