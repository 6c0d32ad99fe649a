"""
Counterexample Hunt - Bounded-exhaustive search over simple executions.

Work is split by script skeleton. For each skeleton the hunt walks every switching pair
(i, j), every simple assignment and every no-op-free schedule, and checks each recorded
execution with search_alpha (and the oracle too in paranoid mode). Skeletons run
in-process or on a ProcessPoolExecutor; results are merged in skeleton order, so the
reported counterexample and execution count do not depend on the worker count.
"""

from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
import logging
import time
from typing import TypeVar

import pandas as pd

from SnapCheck.algorithms.base import SnapshotAlgorithm
from SnapCheck.checking.alpha import Diagnosis, diagnose, search_alpha
from SnapCheck.checking.oracle import BoundExceededError, oracle_linearizable
from SnapCheck.config import DEFAULT_PROGRESS_EVERY
from SnapCheck.exploration.schedules import explore_schedules
from SnapCheck.exploration.simple import (
    SimpleParams,
    assign_simple,
    enumerate_simple_assignments,
    enumerate_skeletons,
)
from SnapCheck.models import Execution
from SnapCheck.simulation.simulator import OpScript, Schedule, run

logger = logging.getLogger(__name__)

Task = TypeVar("Task")
Outcome = TypeVar("Outcome")


class VerdictMismatchError(RuntimeError):
    """Paranoid mode saw the alpha search and the oracle disagree."""


# ============================================================================
# TYPES
# ============================================================================


@dataclass(frozen=True)
class HuntBounds:
    """
    Structural bounds of an exhaustive sweep.

    Attributes:
        n: Process count (>= 2)
        max_steps: Maximum schedule length
        max_ops_per_process: Maximum operation requests per process
    """

    n: int
    max_steps: int
    max_ops_per_process: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"Need at least 2 processes, got {self.n}")
        if self.max_steps < 0:
            raise ValueError(f"max_steps must be non-negative, got {self.max_steps}")
        if self.max_ops_per_process < 0:
            raise ValueError(
                f"max_ops_per_process must be non-negative, got {self.max_ops_per_process}"
            )

    def __str__(self) -> str:
        return f"n={self.n} steps<={self.max_steps} ops<={self.max_ops_per_process}"


@dataclass
class Counterexample:
    """
    A non-linearizable execution and how to reproduce it.

    Attributes:
        model: Model name
        scripts: Scripts with assigned arguments
        schedule: Schedule that produced the execution
        execution: The recorded execution
        params: Simple switch points, None for general assignments
        diagnosis: Closest alpha and its violations
        oracle_verdict: False when the oracle confirms non-linearizability, None when
            the execution exceeds the oracle bound
    """

    model: str
    scripts: OpScript
    schedule: Schedule
    execution: Execution
    params: SimpleParams | None
    diagnosis: Diagnosis
    oracle_verdict: bool | None = None


@dataclass
class HuntReport:
    """
    Outcome of a hunt.

    Attributes:
        model: Model name
        bounds: Bounds used
        checked: Executions checked up to and including the counterexample
        counterexample: First counterexample in enumeration order, if any
        skeleton_stats: One row per skeleton examined
        elapsed: Wall time in seconds
    """

    model: str
    bounds: HuntBounds
    checked: int
    counterexample: Counterexample | None = None
    skeleton_stats: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def clean(self) -> bool:
        return self.counterexample is None

    def stats_frame(self) -> pd.DataFrame:
        """Per-skeleton statistics (skeleton, executions, counterexample)."""
        return pd.DataFrame(
            self.skeleton_stats, columns=["skeleton", "executions", "counterexample"]
        )


@dataclass(frozen=True)
class _HuntTask:
    model: SnapshotAlgorithm
    skeleton: OpScript
    max_steps: int
    paranoid: bool
    oracle_bound: int | None


@dataclass
class _HuntUnit:
    checked: int
    found: tuple[OpScript, Schedule, SimpleParams] | None


# ============================================================================
# HELPERS
# ============================================================================


def run_units(
    worker: Callable[[Task], Outcome], tasks: Iterable[Task], jobs: int = 1
) -> Iterator[Outcome]:
    """
    Apply worker to tasks, yielding outcomes in task order.

    With jobs > 1 tasks run on a process pool; closing the iterator early cancels the
    tasks that have not started.
    """
    if jobs <= 1:
        for task in tasks:
            yield worker(task)
        return

    executor = ProcessPoolExecutor(max_workers=jobs)
    try:
        futures = [executor.submit(worker, task) for task in tasks]
        for future in futures:
            yield future.result()
    finally:
        executor.shutdown(wait=True, cancel_futures=True)


def is_correct(execution: Execution, paranoid: bool = False, oracle_bound: int | None = None) -> bool:
    """Alpha-search verdict, cross-checked against the oracle when paranoid."""
    correct = search_alpha(execution) is not None
    if paranoid:
        oracle = oracle_linearizable(execution, bound=oracle_bound) is not None
        if oracle != correct:
            raise VerdictMismatchError(
                f"Alpha search says {correct}, oracle says {oracle} for {execution!r}"
            )
    return correct


def confirm(
    model: SnapshotAlgorithm,
    scripts: OpScript,
    schedule: Schedule,
    execution: Execution,
    params: SimpleParams | None,
    oracle_bound: int | None = None,
) -> Counterexample:
    """Attach a diagnosis and, within the oracle bound, the oracle verdict."""
    try:
        verdict = oracle_linearizable(execution, bound=oracle_bound) is not None
    except BoundExceededError as e:
        logger.warning(f"Counterexample not confirmed by the oracle: {e}")
        verdict = None
    if verdict:
        logger.error(f"Oracle finds a linearization of reported counterexample {execution!r}")
    return Counterexample(
        model=model.name,
        scripts=scripts,
        schedule=schedule,
        execution=execution,
        params=params,
        diagnosis=diagnose(execution),
        oracle_verdict=verdict,
    )


def _hunt_unit(task: _HuntTask) -> _HuntUnit:
    skeleton = task.skeleton
    checked = 0
    seen: set[tuple] = set()
    for i, j in combinations(range(skeleton.n), 2):
        for params in enumerate_simple_assignments(skeleton, i, j):
            scripts = assign_simple(skeleton, params)
            if scripts.args() in seen:
                continue
            seen.add(scripts.args())
            for schedule, execution in explore_schedules(task.model, scripts, task.max_steps):
                checked += 1
                if not is_correct(execution, task.paranoid, task.oracle_bound):
                    return _HuntUnit(checked, (scripts, schedule, params))
    return _HuntUnit(checked, None)


def _log_progress(before: int, after: int, every: int, label: str) -> None:
    if after // every > before // every:
        logger.info(f"{label}: {after:,} executions checked")


# ============================================================================
# HUNT
# ============================================================================


def hunt(
    model: SnapshotAlgorithm,
    n: int,
    max_steps: int,
    max_ops_per_process: int,
    paranoid: bool = False,
    jobs: int = 1,
    oracle_bound: int | None = None,
    progress_every: int = DEFAULT_PROGRESS_EVERY,
) -> HuntReport:
    """
    Search the simple executions of model within bounds for a non-linearizable one.

    Args:
        model: Algorithm to test
        n: Process count
        max_steps: Maximum schedule length
        max_ops_per_process: Maximum operation requests per process
        paranoid: Cross-check every verdict with the oracle
        jobs: Worker processes (1 = in-process)
        oracle_bound: Oracle event bound (None = environment/default)
        progress_every: Log a progress line every N executions

    Returns:
        HuntReport with the first counterexample in enumeration order, if any

    Raises:
        BoundExceededError: paranoid mode met an execution beyond the oracle bound
        VerdictMismatchError: paranoid mode saw the two deciders disagree
    """
    bounds = HuntBounds(n, max_steps, max_ops_per_process)
    logger.info(f"Hunting {model.name} ({bounds}, paranoid={paranoid}, jobs={jobs})")
    started = time.perf_counter()

    skeletons = list(enumerate_skeletons(n, max_ops_per_process))
    tasks = [_HuntTask(model, s, max_steps, paranoid, oracle_bound) for s in skeletons]

    report = HuntReport(model=model.name, bounds=bounds, checked=0)
    outcomes = run_units(_hunt_unit, tasks, jobs)
    try:
        for skeleton, unit in zip(skeletons, outcomes):
            before = report.checked
            report.checked += unit.checked
            report.skeleton_stats.append(
                {
                    "skeleton": str(skeleton),
                    "executions": unit.checked,
                    "counterexample": unit.found is not None,
                }
            )
            _log_progress(before, report.checked, progress_every, model.name)
            if unit.found is not None:
                scripts, schedule, params = unit.found
                execution = run(model, schedule, scripts)
                report.counterexample = confirm(
                    model, scripts, schedule, execution, params, oracle_bound
                )
                break
    finally:
        outcomes.close()

    report.elapsed = time.perf_counter() - started
    if report.clean:
        logger.info(
            f"{model.name}: clean, {report.checked:,} executions in {report.elapsed:.1f}s"
        )
    else:
        found = report.counterexample
        logger.info(
            f"{model.name}: counterexample after {report.checked:,} executions "
            f"(schedule {found.schedule}, {found.params})"
        )
    return report
