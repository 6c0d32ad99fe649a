"""
Linearizer - Turns a correct alpha assignment into a linearization.

The triangle relation orders every (scan S, p_i-update U) pair over the event set
E = complete events + all updates:

    U <| S   if U <= alpha_i(S)
    S <| U   otherwise

For a correct alpha, real-time precedence united with <| is acyclic, and any linear
extension of it satisfies the snapshot sequential specification. The union is held in a
networkx DiGraph; the deterministic extension is a lexicographic topological sort of its
transitive closure keyed by (start, pid).
"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
import logging
import random

import networkx as nx

from SnapCheck.checking.alpha import (
    AlphaAssignment,
    PropertyViolation,
    check_properties,
)
from SnapCheck.models import Execution, HighLevelEvent, precedes, precedes_or_equal

logger = logging.getLogger(__name__)

PRECEDES = "<"
TRIANGLE = "<|"


class ViolatingAlphaError(ValueError):
    """A strict triangle build was given an alpha that fails check_properties."""

    def __init__(self, violations: Sequence[PropertyViolation]):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"Alpha is not correct: {shown}{more}")


class CyclicInputError(ValueError):
    """Precedence united with the triangle relation has a cycle."""

    def __init__(self, cycle: "Cycle"):
        self.cycle = cycle
        super().__init__(f"Cannot linearize, cycle: {cycle}")


# ============================================================================
# TYPES
# ============================================================================


@dataclass(frozen=True)
class TriangleRelation:
    """Triangle edges (x, y), meaning x <| y, over the event ids in `nodes`."""

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def holds(self, x: str, y: str) -> bool:
        return (x, y) in self.edges

    def __contains__(self, pair: object) -> bool:
        return pair in self.edges

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TotalOrder:
    """A sequence of distinct event ids."""

    sequence: tuple[str, ...]

    def __iter__(self) -> Iterator[str]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self, event_id: str) -> int:
        return self.sequence.index(event_id)

    def lines(self) -> list[str]:
        return [f"LIN {event_id}" for event_id in self.sequence]


@dataclass(frozen=True)
class Cycle:
    """
    A cycle events[0] -> events[1] -> ... -> events[0] in precedence united with <|.

    relations[k] labels the edge leaving events[k] ('<' or '<|').
    """

    events: tuple[str, ...]
    relations: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.events)

    def edges(self) -> list[tuple[str, str, str]]:
        m = len(self.events)
        return [
            (self.events[k], self.relations[k], self.events[(k + 1) % m]) for k in range(m)
        ]

    def __str__(self) -> str:
        parts = [f"{x} {rel} " for x, rel, _ in self.edges()]
        return "".join(parts) + self.events[0]


# ============================================================================
# TRIANGLE RELATION
# ============================================================================


def linearization_events(execution: Execution) -> list[HighLevelEvent]:
    """complete events + all updates, in (start, pid) order."""
    return [e for e in execution.events if e.is_complete or e.is_update]


def build_triangle(
    execution: Execution, alpha: AlphaAssignment, strict: bool = True
) -> TriangleRelation:
    """
    Build the triangle relation induced by alpha.

    Args:
        execution: The execution
        alpha: Alpha assignment over its complete scans
        strict: Reject an alpha that fails check_properties

    Raises:
        ViolatingAlphaError: strict and alpha has violations
    """
    if strict:
        violations = check_properties(execution, alpha)
        if violations:
            raise ViolatingAlphaError(violations)

    edges: set[tuple[str, str]] = set()
    for scan in execution.complete_scans:
        for update in execution.updates:
            if precedes_or_equal(update, alpha(update.pid, scan)):
                edges.add((update.id, scan.id))
            else:
                edges.add((scan.id, update.id))

    nodes = tuple(e.id for e in linearization_events(execution))
    return TriangleRelation(nodes=nodes, edges=frozenset(edges))


def union_graph(execution: Execution, tri: TriangleRelation) -> nx.DiGraph:
    """DiGraph of precedence united with <| over tri's event set, edges labelled."""
    graph = nx.DiGraph()
    events = [execution.event(node) for node in tri.nodes]
    graph.add_nodes_from(tri.nodes)

    for x in events:
        for y in events:
            if precedes(x, y):
                graph.add_edge(x.id, y.id, relation=PRECEDES)
    for x, y in sorted(tri.edges):
        # <| wins the label when both relations hold
        graph.add_edge(x, y, relation=TRIANGLE)
    return graph


def has_cycle(execution: Execution, tri: TriangleRelation) -> Cycle | None:
    """
    Find a shortest cycle in precedence united with <|, or None.

    Every edge is closed into a cycle through a shortest return path; the shortest
    result (first in edge order on ties) is the witness.
    """
    graph = union_graph(execution, tri)
    if nx.is_directed_acyclic_graph(graph):
        return None

    order = {node: k for k, node in enumerate(tri.nodes)}
    best: list[str] | None = None
    for u, v in sorted(graph.edges, key=lambda edge: (order[edge[0]], order[edge[1]])):
        try:
            path = nx.shortest_path(graph, v, u)
        except nx.NetworkXNoPath:
            continue
        cycle_nodes = [u] + path[:-1]
        if best is None or len(cycle_nodes) < len(best):
            best = cycle_nodes
            if len(best) == 2:
                break

    m = len(best)
    relations = tuple(graph.edges[best[k], best[(k + 1) % m]]["relation"] for k in range(m))
    cycle = Cycle(events=tuple(best), relations=relations)
    logger.debug(f"Cycle in {execution!r}: {cycle}")
    return cycle


# ============================================================================
# LINEARIZATION
# ============================================================================


def _acyclic_graph(execution: Execution, alpha: AlphaAssignment) -> nx.DiGraph:
    tri = build_triangle(execution, alpha)
    cycle = has_cycle(execution, tri)
    if cycle is not None:
        raise CyclicInputError(cycle)
    return union_graph(execution, tri)


def build_linearization(execution: Execution, alpha: AlphaAssignment) -> TotalOrder:
    """
    Extend precedence united with <| to a total order.

    Ties are broken by (start, pid), so the result is reproducible.

    Raises:
        ViolatingAlphaError: alpha fails check_properties
        CyclicInputError: the union relation has a cycle
    """
    graph = _acyclic_graph(execution, alpha)
    closure = nx.transitive_closure_dag(graph)

    def tie_break(node: str) -> tuple[int, int]:
        event = execution.event(node)
        return event.start, event.pid

    order = TotalOrder(tuple(nx.lexicographical_topological_sort(closure, key=tie_break)))
    logger.debug(f"Linearization of {execution!r}: {' '.join(order)}")
    return order


def sample_linearizations(
    execution: Execution, alpha: AlphaAssignment, count: int, seed: int = 0
) -> list[TotalOrder]:
    """
    Draw random linear extensions of precedence united with <|.

    Each draw is a Kahn topological sort picking uniformly among the available nodes;
    draws may repeat.
    """
    graph = _acyclic_graph(execution, alpha)
    rng = random.Random(seed)
    samples = []
    for _ in range(count):
        indegree = dict(graph.in_degree())
        available = sorted(node for node, degree in indegree.items() if degree == 0)
        sequence = []
        while available:
            node = available.pop(rng.randrange(len(available)))
            sequence.append(node)
            for successor in graph.successors(node):
                indegree[successor] -= 1
                if indegree[successor] == 0:
                    available.append(successor)
            available.sort()
        samples.append(TotalOrder(tuple(sequence)))
    return samples


def all_linearizations(execution: Execution, alpha: AlphaAssignment) -> Iterator[TotalOrder]:
    """Every linear extension; exponential, for small executions only."""
    graph = _acyclic_graph(execution, alpha)
    for sequence in nx.all_topological_sorts(graph):
        yield TotalOrder(tuple(sequence))


# ============================================================================
# SEQUENTIAL SPECIFICATION
# ============================================================================


def sequential_spec_failures(execution: Execution, order: TotalOrder) -> list[str]:
    """
    Reasons why `order` is not a legal snapshot linearization (empty if it is).
    """
    failures: list[str] = []

    unknown = [event_id for event_id in order if event_id not in execution]
    if unknown:
        return [f"unknown events {unknown}"]
    if len(set(order.sequence)) != len(order):
        return ["order repeats an event"]

    events = [execution.event(event_id) for event_id in order]
    placed = {e.id for e in events}

    missing = [e.id for e in execution.events if e.is_complete and e.id not in placed]
    if missing:
        failures.append(f"complete events missing: {missing}")

    seen_body = False
    for event in events:
        if event.initial and seen_body:
            failures.append(f"initial update {event.id} after a non-initial event")
        seen_body = seen_body or not event.initial

    for a, earlier in enumerate(events):
        for later in events[a + 1 :]:
            if precedes(later, earlier):
                failures.append(f"{later.id} precedes {earlier.id} but is ordered after it")

    latest: list[int | None] = [None] * execution.n
    for event in events:
        if event.is_update:
            latest[event.pid] = event.arg
        elif event.is_complete and tuple(latest) != event.ret:
            failures.append(f"{event.id} returns {event.ret}, order gives {tuple(latest)}")

    return failures


def check_sequential_spec(execution: Execution, order: TotalOrder) -> bool:
    """
    True iff order extends precedence, places the initial updates first, covers every
    complete event, and every complete scan returns the values of the latest update
    of each process before it.
    """
    failures = sequential_spec_failures(execution, order)
    if failures:
        logger.debug(f"Order rejected: {failures[0]}")
    return not failures


# ============================================================================
# LEMMA CHECKS
# ============================================================================


def lemma_breaches(execution: Execution, alpha: AlphaAssignment) -> list[str]:
    """
    Check the structural lemmas of the triangle relation for one alpha.

    For a correct alpha all of these hold: x <| y never has y < x; x <| y <| z never
    has z < x; every 4-chain x1 <| x2 <| x3 <| x4 has x1 <| x4; and precedence united
    with <| is acyclic.

    Returns:
        Human-readable breach descriptions (empty when every lemma holds)
    """
    tri = build_triangle(execution, alpha, strict=False)
    event = execution.event
    successors: dict[str, list[str]] = {}
    for x, y in sorted(tri.edges):
        successors.setdefault(x, []).append(y)

    breaches = []
    for x, y in sorted(tri.edges):
        if precedes(event(y), event(x)):
            breaches.append(f"two-element: {x} <| {y} but {y} < {x}")
        for z in successors.get(y, []):
            if precedes(event(z), event(x)):
                breaches.append(f"three-element: {x} <| {y} <| {z} but {z} < {x}")
            for w in successors.get(z, []):
                if not tri.holds(x, w):
                    breaches.append(f"composition: {x} <| {y} <| {z} <| {w} but not {x} <| {w}")

    cycle = has_cycle(execution, tri)
    if cycle is not None:
        breaches.append(f"cycle: {cycle}")
    return breaches
