"""
Alpha Checker - Correct-function witnesses for snapshot executions.

An AlphaAssignment maps every complete scan S and process index i to a p_i-update
alpha_i(S), the update whose value S reports in entry i. The assignment is correct when:

    P1  S returns val(alpha_i(S)) in entry i
    P2  not S < alpha_i(S)
    P3  no p_i-update U with alpha_i(S) < U < S
    P4  S1 < S2 implies alpha_i(S1) <= alpha_i(S2)
    P5  no p_i-update U with alpha_i(S) < U < alpha_j(S)
    P6  never both S1 <_a S2 and S2 <_a S1, where S1 <_a S2 iff some i has
        alpha_i(S1) < alpha_i(S2)

An execution is linearizable iff a correct assignment exists, so search_alpha decides
linearizability and check_properties explains why a given witness fails.
"""

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import islice, product
import logging

from SnapCheck.models import (
    Execution,
    HighLevelEvent,
    PENDING,
    precedes,
    precedes_or_equal,
)

logger = logging.getLogger(__name__)


class AlphaMismatchError(ValueError):
    """An alpha assignment does not fit the execution it is checked against."""


# ============================================================================
# TYPES
# ============================================================================


@dataclass(frozen=True)
class AlphaAssignment:
    """
    The witness functions alpha_0 .. alpha_{n-1}.

    functions[i] maps a complete scan id to the p_i-update event assigned to it.
    """

    n: int
    functions: tuple[Mapping[str, HighLevelEvent], ...]

    def __post_init__(self):
        if len(self.functions) != self.n:
            raise AlphaMismatchError(
                f"Expected {self.n} functions, got {len(self.functions)}"
            )

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[tuple[int, str, HighLevelEvent]]
    ) -> "AlphaAssignment":
        """Build from (i, scan id, update) triples; a repeated (i, scan) is an error."""
        functions: list[dict[str, HighLevelEvent]] = [{} for _ in range(n)]
        for i, scan_id, update in pairs:
            if not 0 <= i < n:
                raise AlphaMismatchError(f"Process index {i} not in [0, {n})")
            if scan_id in functions[i]:
                raise AlphaMismatchError(f"alpha_{i}({scan_id}) assigned twice")
            functions[i][scan_id] = update
        return cls(n=n, functions=tuple(functions))

    def __call__(self, i: int, scan: HighLevelEvent | str) -> HighLevelEvent:
        scan_id = scan if isinstance(scan, str) else scan.id
        return self.functions[i][scan_id]

    @property
    def scan_ids(self) -> frozenset[str]:
        ids: set[str] = set()
        for function in self.functions:
            ids.update(function)
        return frozenset(ids)

    def items(self) -> Iterator[tuple[int, str, HighLevelEvent]]:
        """(i, scan id, update) triples ordered by process index, then scan id."""
        for i, function in enumerate(self.functions):
            for scan_id in sorted(function):
                yield i, scan_id, function[scan_id]

    def __str__(self) -> str:
        inner = ", ".join(f"a{i}({s})={u.id}" for i, s, u in self.items())
        return f"Alpha[{inner}]"


@dataclass(frozen=True)
class PropertyViolation:
    """
    One failing (property, witness) pair.

    Fields:
        property: 1..6
        scan: The scan S (S1 for properties 4 and 6)
        i: Process index the failure is about
        scan2: S2 for properties 4 and 6
        j: Second index for properties 5 and 6
        update: The offending update (alpha_i(S), or the update U in between)
    """

    property: int
    scan: str
    i: int
    scan2: str | None = None
    j: int | None = None
    update: str | None = None

    def __str__(self) -> str:
        parts = [f"P{self.property}", f"scan={self.scan}"]
        if self.scan2 is not None:
            parts.append(f"scan2={self.scan2}")
        parts.append(f"i={self.i}")
        if self.j is not None:
            parts.append(f"j={self.j}")
        if self.update is not None:
            parts.append(f"update={self.update}")
        return " ".join(parts)


@dataclass
class Diagnosis:
    """
    Best available explanation of why an execution has no correct alpha.

    Attributes:
        alpha: Property-1-consistent assignment with the fewest violations, if any
        violations: Its violations (empty when alpha is correct)
        missing: (scan id, i) entries with no value-matching p_i-update
        exhausted: False when the candidate product was truncated at the limit
    """

    alpha: AlphaAssignment | None
    violations: list[PropertyViolation] = field(default_factory=list)
    missing: list[tuple[str, int]] = field(default_factory=list)
    exhausted: bool = True

    @property
    def correct(self) -> bool:
        return self.alpha is not None and not self.violations

    def lines(self) -> list[str]:
        if self.missing:
            return [f"P1 scan={scan_id} i={i} no-candidate" for scan_id, i in self.missing]
        return [str(v) for v in self.violations]


# ============================================================================
# PROPERTY CHECKS
# ============================================================================


def _between(execution: Execution, pid: int, low: HighLevelEvent, high: HighLevelEvent) -> list[HighLevelEvent]:
    """p_pid-updates U with low < U < high."""
    return [u for u in execution.updates_of(pid) if precedes(low, u) and precedes(u, high)]


def alpha_less(alpha: AlphaAssignment, s1: HighLevelEvent, s2: HighLevelEvent) -> bool:
    """S1 <_alpha S2: some index i has alpha_i(S1) < alpha_i(S2)."""
    return any(precedes(alpha(i, s1), alpha(i, s2)) for i in range(alpha.n))


def _check_shape(execution: Execution, alpha: AlphaAssignment) -> None:
    if alpha.n != execution.n:
        raise AlphaMismatchError(
            f"Alpha has {alpha.n} functions but execution has n={execution.n}"
        )
    expected = {s.id for s in execution.complete_scans}
    for i, function in enumerate(alpha.functions):
        domain = set(function)
        if domain != expected:
            missing = sorted(expected - domain)
            extra = sorted(domain - expected)
            raise AlphaMismatchError(
                f"alpha_{i} domain differs from the complete scans "
                f"(missing={missing}, extra={extra})"
            )
        for scan_id, update in function.items():
            if update not in execution:
                raise AlphaMismatchError(
                    f"alpha_{i}({scan_id}) = {update.id} is not an event of the execution"
                )
            if not update.is_update or update.pid != i:
                raise AlphaMismatchError(
                    f"alpha_{i}({scan_id}) = {update.id} is not a p{i}-update"
                )


def _violations_for_scan(execution: Execution, alpha: AlphaAssignment, scan: HighLevelEvent) -> Iterator[PropertyViolation]:
    for i in range(execution.n):
        target = alpha(i, scan)
        if scan.ret is None or scan.ret[i] != target.arg:
            yield PropertyViolation(1, scan.id, i, update=target.id)
        if precedes(scan, target):
            yield PropertyViolation(2, scan.id, i, update=target.id)
        for u in _between(execution, i, target, scan):
            yield PropertyViolation(3, scan.id, i, update=u.id)
        for j in range(execution.n):
            if j == i:
                continue
            for u in _between(execution, i, target, alpha(j, scan)):
                yield PropertyViolation(5, scan.id, i, j=j, update=u.id)


def _violations_for_pair(
    execution: Execution, alpha: AlphaAssignment, s1: HighLevelEvent, s2: HighLevelEvent
) -> Iterator[PropertyViolation]:
    for first, second in ((s1, s2), (s2, s1)):
        if precedes(first, second):
            for i in range(execution.n):
                if not precedes_or_equal(alpha(i, first), alpha(i, second)):
                    yield PropertyViolation(
                        4, first.id, i, scan2=second.id, update=alpha(i, first).id
                    )

    forward = [i for i in range(execution.n) if precedes(alpha(i, s1), alpha(i, s2))]
    backward = [j for j in range(execution.n) if precedes(alpha(j, s2), alpha(j, s1))]
    if forward and backward:
        yield PropertyViolation(6, s1.id, forward[0], scan2=s2.id, j=backward[0])


def check_properties(execution: Execution, alpha: AlphaAssignment) -> list[PropertyViolation]:
    """
    Check all six correctness properties of an alpha assignment.

    Args:
        execution: The execution alpha is a witness for
        alpha: Candidate assignment, total on the complete scans

    Returns:
        One violation per failing (property, witness) pair, ordered by property and
        then scan start; empty iff alpha is correct

    Raises:
        AlphaMismatchError: alpha references foreign events or has the wrong domain
    """
    _check_shape(execution, alpha)
    scans = execution.complete_scans

    violations: list[PropertyViolation] = []
    for scan in scans:
        violations.extend(_violations_for_scan(execution, alpha, scan))
    for a, s1 in enumerate(scans):
        for s2 in scans[a + 1 :]:
            violations.extend(_violations_for_pair(execution, alpha, s1, s2))

    def start_of(event_id: str | None) -> float:
        return -PENDING if event_id is None else execution.event(event_id).start

    violations.sort(
        key=lambda v: (
            v.property,
            start_of(v.scan),
            start_of(v.scan2),
            v.i,
            -1 if v.j is None else v.j,
            start_of(v.update),
        )
    )
    return violations


def replay_violation(execution: Execution, alpha: AlphaAssignment, violation: PropertyViolation) -> bool:
    """
    Re-evaluate one violation from its witnesses alone.

    Returns:
        True iff the witnesses still instantiate a failure of the named property
    """
    scan = execution.event(violation.scan)
    i = violation.i
    target = alpha(i, scan)
    update = execution.event(violation.update) if violation.update else None

    match violation.property:
        case 1:
            return scan.ret is None or scan.ret[i] != target.arg
        case 2:
            return precedes(scan, target)
        case 3:
            return (
                update is not None
                and update.pid == i
                and precedes(target, update)
                and precedes(update, scan)
            )
        case 4:
            scan2 = execution.event(violation.scan2)
            return precedes(scan, scan2) and not precedes_or_equal(target, alpha(i, scan2))
        case 5:
            j = violation.j
            return (
                update is not None
                and update.pid == i
                and precedes(target, update)
                and precedes(update, alpha(j, scan))
            )
        case 6:
            scan2 = execution.event(violation.scan2)
            return precedes(target, alpha(i, scan2)) and precedes(
                alpha(violation.j, scan2), alpha(violation.j, scan)
            )
    raise ValueError(f"Unknown property {violation.property}")


# ============================================================================
# SEARCH
# ============================================================================


class _AlphaSearch:
    """
    Backtracking over the variables (S, i), ordered by scan start then i.

    Domains hold the p_i-updates that satisfy P1, P2 and P3 for S, in start order.
    P4, P5 and P6 are checked against the partial assignment as each variable is set.
    """

    def __init__(self, execution: Execution):
        self.execution = execution
        self.n = execution.n
        self.scans = execution.complete_scans
        self.updates = [execution.updates_of(i) for i in range(self.n)]
        self.domains = [
            [self._candidates(scan, i) for i in range(self.n)] for scan in self.scans
        ]
        self.chosen: list[list[HighLevelEvent | None]] = [
            [None] * self.n for _ in self.scans
        ]
        self.nodes = 0

    def _candidates(self, scan: HighLevelEvent, i: int) -> list[HighLevelEvent]:
        result = []
        for u in self.updates[i]:
            if scan.ret is None or u.arg != scan.ret[i]:
                continue
            if precedes(scan, u):
                continue
            if any(precedes(u, w) and precedes(w, scan) for w in self.updates[i]):
                continue
            result.append(u)
        return result

    def empty_domain(self) -> tuple[str, int] | None:
        for scan, domains in zip(self.scans, self.domains):
            for i, domain in enumerate(domains):
                if not domain:
                    return scan.id, i
        return None

    def _has_between(self, i: int, low: HighLevelEvent, high: HighLevelEvent) -> bool:
        return any(precedes(low, u) and precedes(u, high) for u in self.updates[i])

    def _consistent(self, s: int, i: int, u: HighLevelEvent) -> bool:
        row = self.chosen[s]
        # P5 against the indices already fixed for this scan
        for j in range(i):
            v = row[j]
            if self._has_between(i, u, v) or self._has_between(j, v, u):
                return False

        scan = self.scans[s]
        for t in range(s):
            other = self.chosen[t]
            # scans are in start order, so only other < scan is possible
            if precedes(self.scans[t], scan) and not precedes_or_equal(other[i], u):
                return False
            forward = backward = False
            for k in range(i + 1):
                mine = u if k == i else row[k]
                if precedes(other[k], mine):
                    forward = True
                if precedes(mine, other[k]):
                    backward = True
            if forward and backward:
                return False
        return True

    def solutions(self, position: int = 0) -> Iterator[AlphaAssignment]:
        if position == len(self.scans) * self.n:
            yield self._snapshot()
            return
        s, i = divmod(position, self.n)
        for u in self.domains[s][i]:
            self.nodes += 1
            if not self._consistent(s, i, u):
                continue
            self.chosen[s][i] = u
            yield from self.solutions(position + 1)
            self.chosen[s][i] = None

    def _snapshot(self) -> AlphaAssignment:
        return AlphaAssignment.from_pairs(
            self.n,
            (
                (i, scan.id, self.chosen[s][i])
                for s, scan in enumerate(self.scans)
                for i in range(self.n)
            ),
        )


def search_alpha(execution: Execution) -> AlphaAssignment | None:
    """
    Find a correct alpha assignment, or None if the execution has none.

    Stops at the first solution, and immediately when some (S, i) has no candidate
    update. Candidates are tried in (scan start, process index, update start) order,
    so the witness is reproducible.
    """
    search = _AlphaSearch(execution)
    empty = search.empty_domain()
    if empty is not None:
        logger.debug(f"No candidate for alpha_{empty[1]}({empty[0]}) in {execution!r}")
        return None

    alpha = next(search.solutions(), None)
    logger.debug(
        f"Alpha search on {execution!r}: "
        f"{'found' if alpha else 'not found'} after {search.nodes} node(s)"
    )
    return alpha


def iter_correct_alphas(execution: Execution) -> Iterator[AlphaAssignment]:
    """Every correct alpha assignment, in search order."""
    search = _AlphaSearch(execution)
    if search.empty_domain() is not None:
        return
    yield from search.solutions()


def diagnose(execution: Execution, limit: int = 4096) -> Diagnosis:
    """
    Explain an execution through its most nearly correct alpha.

    Among the assignments satisfying P1 (at most `limit` of them, in lexicographic
    candidate order) picks the first one with the fewest violations.

    Args:
        execution: Execution to explain
        limit: Cap on P1-consistent assignments examined

    Returns:
        Diagnosis; `missing` is set when some scan entry has no value-matching update
    """
    scans = execution.complete_scans
    keys = [(scan, i) for scan in scans for i in range(execution.n)]
    domains = [
        [u for u in execution.updates_of(i) if scan.ret is not None and u.arg == scan.ret[i]]
        for scan, i in keys
    ]

    missing = [(scan.id, i) for (scan, i), domain in zip(keys, domains) if not domain]
    if missing:
        return Diagnosis(alpha=None, missing=missing)

    best: Diagnosis | None = None
    examined = 0
    for choice in islice(product(*domains), limit):
        examined += 1
        alpha = AlphaAssignment.from_pairs(
            execution.n, ((i, scan.id, u) for (scan, i), u in zip(keys, choice))
        )
        violations = check_properties(execution, alpha)
        if best is None or len(violations) < len(best.violations):
            best = Diagnosis(alpha=alpha, violations=violations)
            if not violations:
                break

    total = 1
    for domain in domains:
        total *= len(domain)
    best.exhausted = examined >= total or not best.violations
    return best
