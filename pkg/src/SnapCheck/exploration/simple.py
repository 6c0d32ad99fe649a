"""
Simple executions.

An (i, j)-simple assignment gives every update argument 0, except that the updates of
p_i switch to 1 from the r_i-th one on (counting from 0) and likewise for p_j with r_j.
For schedule-based algorithms, some simple execution is incorrect whenever any
execution is, so counterexample hunts only need these arguments.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import product
import logging

from SnapCheck.models import EventKind
from SnapCheck.simulation.simulator import OpRequest, OpScript

logger = logging.getLogger(__name__)

KINDS = (EventKind.SCAN, EventKind.UPDATE)


@dataclass(frozen=True)
class SimpleParams:
    """
    Switch points of an (i, j)-simple assignment.

    Attributes:
        i, j: The two distinct switching processes
        r_i, r_j: Index of the first update written as 1
    """

    i: int
    j: int
    r_i: int
    r_j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f"Switching processes must differ, got i=j={self.i}")
        if min(self.i, self.j, self.r_i, self.r_j) < 0:
            raise ValueError(f"Negative field in {self}")

    def value(self, pid: int, r: int) -> int:
        """Argument of the r-th update (0-based) of process pid."""
        if pid == self.i:
            return 0 if r < self.r_i else 1
        if pid == self.j:
            return 0 if r < self.r_j else 1
        return 0

    def __str__(self) -> str:
        return f"i={self.i} j={self.j} r_i={self.r_i} r_j={self.r_j}"


def enumerate_skeletons(n: int, max_ops_per_process: int) -> Iterator[OpScript]:
    """
    Every argument-free script with at most max_ops_per_process requests per process.

    Ordered by total request count, then lexicographically (scan before update).
    """
    if n < 1 or max_ops_per_process < 0:
        raise ValueError(f"Invalid skeleton bounds n={n}, max_ops={max_ops_per_process}")

    sequences = [
        seq for length in range(max_ops_per_process + 1) for seq in product(KINDS, repeat=length)
    ]
    code = {EventKind.SCAN: 0, EventKind.UPDATE: 1}

    def order(combo: tuple[tuple[EventKind, ...], ...]) -> tuple:
        return (
            sum(len(seq) for seq in combo),
            tuple((len(seq), tuple(code[k] for k in seq)) for seq in combo),
        )

    for combo in sorted(product(sequences, repeat=n), key=order):
        yield OpScript(tuple(tuple(OpRequest(kind) for kind in seq) for seq in combo))


def enumerate_simple_assignments(skeleton: OpScript, i: int, j: int) -> Iterator[SimpleParams]:
    """
    All switch points for the (i, j) pair of a skeleton.

    Yields (#p_i-updates + 1) * (#p_j-updates + 1) parameter sets, r_i outermost.
    """
    if not (0 <= i < skeleton.n and 0 <= j < skeleton.n):
        raise ValueError(f"Pair ({i}, {j}) out of range for {skeleton.n} processes")
    for r_i in range(skeleton.update_count(i) + 1):
        for r_j in range(skeleton.update_count(j) + 1):
            yield SimpleParams(i=i, j=j, r_i=r_i, r_j=r_j)


def assign_simple(skeleton: OpScript, params: SimpleParams) -> OpScript:
    """The scripts of skeleton with update arguments set by params."""
    return skeleton.with_args(
        [
            [params.value(pid, r) for r in range(skeleton.update_count(pid))]
            for pid in range(skeleton.n)
        ]
    )


def is_simple(scripts: OpScript, params: SimpleParams) -> bool:
    """True iff every update argument of scripts follows params."""
    return all(
        arg == params.value(pid, r)
        for pid, args in enumerate(scripts.args())
        for r, arg in enumerate(args)
    )
