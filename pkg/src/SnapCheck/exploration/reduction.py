"""
Reduction Check - Empirical test that simple executions suffice.

Enumerates general executions with update arguments drawn from a value domain. Each
non-linearizable one must be matched by a non-linearizable simple execution with the same
skeleton under the same schedule; a miss is a breach. Independently, a simple-execution
hunt with the same bounds must find a counterexample whenever a general one exists.
Schedule-based models never breach; value-sensitive models can.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations, product
import logging
import time

from SnapCheck.algorithms.base import SnapshotAlgorithm
from SnapCheck.checking.alpha import search_alpha
from SnapCheck.config import DEFAULT_PROGRESS_EVERY
from SnapCheck.exploration.hunt import (
    Counterexample,
    HuntBounds,
    HuntReport,
    confirm,
    hunt,
    run_units,
)
from SnapCheck.exploration.schedules import explore_schedules
from SnapCheck.exploration.simple import (
    assign_simple,
    enumerate_simple_assignments,
    enumerate_skeletons,
)
from SnapCheck.simulation.simulator import OpScript, Schedule, run

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionBreach:
    """A general counterexample with no incorrect simple execution of the same shape."""

    scripts: OpScript
    schedule: Schedule

    def __str__(self) -> str:
        return f"BREACH schedule={self.schedule} scripts={self.scripts}"


@dataclass
class ReductionReport:
    """
    Outcome of check_reduction.

    Attributes:
        model: Model name
        value_domain: Update arguments used for general executions
        bounds: Structural bounds
        checked: General executions checked
        general_counterexamples: Non-linearizable general executions found
        first_general: The first of them, in enumeration order
        breaches: General counterexamples without a similar simple one
        simple_report: Hunt over simple executions with the same bounds
        elapsed: Wall time in seconds
    """

    model: str
    value_domain: tuple[int, ...]
    bounds: HuntBounds
    checked: int = 0
    general_counterexamples: int = 0
    first_general: Counterexample | None = None
    breaches: list[ReductionBreach] = field(default_factory=list)
    simple_report: HuntReport | None = None
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        """No breach, and a simple counterexample exists whenever a general one does."""
        if self.breaches:
            return False
        if self.general_counterexamples == 0:
            return True
        return self.simple_report is not None and not self.simple_report.clean


@dataclass(frozen=True)
class _ReductionTask:
    model: SnapshotAlgorithm
    skeleton: OpScript
    value_domain: tuple[int, ...]
    max_steps: int


@dataclass
class _ReductionUnit:
    checked: int = 0
    counterexamples: int = 0
    first: tuple[OpScript, Schedule] | None = None
    breaches: list[ReductionBreach] = field(default_factory=list)


def _general_assignments(skeleton: OpScript, domain: tuple[int, ...]) -> Iterable[OpScript]:
    counts = [skeleton.update_count(pid) for pid in range(skeleton.n)]
    for values in product(domain, repeat=sum(counts)):
        args, offset = [], 0
        for count in counts:
            args.append(values[offset : offset + count])
            offset += count
        yield skeleton.with_args(args)


def has_simple_counterexample(
    model: SnapshotAlgorithm, skeleton: OpScript, schedule: Schedule
) -> bool:
    """True iff some simple assignment of skeleton is incorrect under schedule."""
    for i, j in combinations(range(skeleton.n), 2):
        for params in enumerate_simple_assignments(skeleton, i, j):
            execution = run(model, schedule, assign_simple(skeleton, params))
            if search_alpha(execution) is None:
                return True
    return False


def _reduction_unit(task: _ReductionTask) -> _ReductionUnit:
    unit = _ReductionUnit()
    matched: dict[tuple[int, ...], bool] = {}
    for scripts in _general_assignments(task.skeleton, task.value_domain):
        for schedule, execution in explore_schedules(task.model, scripts, task.max_steps):
            unit.checked += 1
            if search_alpha(execution) is not None:
                continue
            unit.counterexamples += 1
            if unit.first is None:
                unit.first = (scripts, schedule)
            if schedule.steps not in matched:
                matched[schedule.steps] = has_simple_counterexample(
                    task.model, task.skeleton, schedule
                )
                if not matched[schedule.steps]:
                    unit.breaches.append(ReductionBreach(scripts, schedule))
    return unit


def check_reduction(
    model: SnapshotAlgorithm,
    value_domain: Iterable[int],
    n: int,
    max_steps: int,
    max_ops_per_process: int,
    jobs: int = 1,
    oracle_bound: int | None = None,
    progress_every: int = DEFAULT_PROGRESS_EVERY,
) -> ReductionReport:
    """
    Compare general and simple executions of model within bounds.

    Args:
        model: Algorithm to test
        value_domain: Finite set of update arguments for general executions
        n: Process count
        max_steps: Maximum schedule length
        max_ops_per_process: Maximum operation requests per process
        jobs: Worker processes (1 = in-process)
        oracle_bound: Oracle event bound used to confirm counterexamples
        progress_every: Log a progress line every N executions

    Returns:
        ReductionReport; breaches are also logged as warnings
    """
    domain = tuple(sorted(set(value_domain)))
    if not domain or min(domain) < 0:
        raise ValueError(f"Value domain must be non-empty and non-negative, got {domain}")
    bounds = HuntBounds(n, max_steps, max_ops_per_process)
    logger.info(f"Reduction check for {model.name} (domain={domain}, {bounds})")
    started = time.perf_counter()

    skeletons = list(enumerate_skeletons(n, max_ops_per_process))
    tasks = [_ReductionTask(model, s, domain, max_steps) for s in skeletons]
    report = ReductionReport(model=model.name, value_domain=domain, bounds=bounds)

    for unit in run_units(_reduction_unit, tasks, jobs):
        before = report.checked
        report.checked += unit.checked
        report.general_counterexamples += unit.counterexamples
        report.breaches.extend(unit.breaches)
        if report.first_general is None and unit.first is not None:
            scripts, schedule = unit.first
            execution = run(model, schedule, scripts)
            report.first_general = confirm(model, scripts, schedule, execution, None, oracle_bound)
        if report.checked // progress_every > before // progress_every:
            logger.info(f"{model.name}: {report.checked:,} general executions checked")

    for breach in report.breaches:
        logger.warning(f"{model.name}: reduction breach, {breach}")

    report.simple_report = hunt(
        model,
        n,
        max_steps,
        max_ops_per_process,
        jobs=jobs,
        oracle_bound=oracle_bound,
        progress_every=progress_every,
    )
    report.elapsed = time.perf_counter() - started
    logger.info(
        f"{model.name}: {report.general_counterexamples} general counterexample(s), "
        f"{len(report.breaches)} breach(es), simple hunt "
        f"{'clean' if report.simple_report.clean else 'found one'}"
    )
    return report
