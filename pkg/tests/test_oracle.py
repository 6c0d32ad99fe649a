"""
Tests for the brute-force oracle and its agreement with the alpha checker.
"""

import pytest

from SnapCheck.algorithms import AtomicMock, SingleCollect
from SnapCheck.checking.alpha import search_alpha
from SnapCheck.checking.linearizer import check_sequential_spec
from SnapCheck.checking.oracle import BoundExceededError, oracle_linearizable
from SnapCheck.exploration.schedules import explore_schedules
from SnapCheck.simulation import OpRequest, OpScript
from tests.conftest import trace


PENDING_SEEN = """
    n=2
    1 update 0 pending arg=1
    0 scan 2 5 ret=0,1
"""

PENDING_MISSED = """
    n=2
    1 update 0 pending arg=1
    0 scan 2 5 ret=0,0
"""


class TestOracle:
    def test_first_execution(self, first_execution):
        candidate = oracle_linearizable(first_execution)
        assert candidate is not None
        assert check_sequential_spec(first_execution, candidate.order)
        assert candidate.lines()[0] == "LINEARIZABLE"

    def test_crossed_scans(self, crossed_scans):
        assert oracle_linearizable(crossed_scans) is None

    def test_empty_execution(self):
        candidate = oracle_linearizable(trace("n=3"))
        assert candidate.order.sequence == ("p0.init", "p1.init", "p2.init")

    def test_pending_update_kept_when_seen(self):
        candidate = oracle_linearizable(trace(PENDING_SEEN))
        assert "p1.1" in candidate.chosen
        assert candidate.order.sequence[-2:] == ("p1.1", "p0.1")

    def test_pending_update_dropped_when_missed(self):
        candidate = oracle_linearizable(trace(PENDING_MISSED))
        assert "p1.1" not in candidate.chosen
        assert "p0.1" in candidate.chosen

    def test_pending_scan_never_needed(self):
        execution = trace(
            """
            n=2
            0 update 0 1 arg=4
            1 scan 2 pending
            """
        )
        candidate = oracle_linearizable(execution)
        assert candidate.chosen == {"p0.init", "p1.init", "p0.1"}

    @pytest.mark.parametrize("prune", [True, False])
    def test_pruning_does_not_change_verdicts(self, prune, first_execution, crossed_scans, sequential):
        assert oracle_linearizable(first_execution, prune=prune) is not None
        assert oracle_linearizable(sequential, prune=prune) is not None
        assert oracle_linearizable(crossed_scans, prune=prune) is None


class TestBound:
    def test_explicit_bound(self, first_execution):
        with pytest.raises(BoundExceededError) as excinfo:
            oracle_linearizable(first_execution, bound=3)
        assert (excinfo.value.count, excinfo.value.bound) == (4, 3)

    def test_bound_from_environment(self, first_execution, monkeypatch):
        monkeypatch.setenv("SNAPCHECK_ORACLE_BOUND", "2")
        with pytest.raises(BoundExceededError, match="SNAPCHECK_ORACLE_BOUND"):
            oracle_linearizable(first_execution)

    def test_bound_is_inclusive(self, first_execution):
        assert oracle_linearizable(first_execution, bound=4) is not None


class TestAgreement:
    """Alpha search and the oracle must reach the same verdict on simulated runs."""

    def sweep(self, model, scripts, max_steps):
        verdicts = set()
        for schedule, execution in explore_schedules(model, scripts, max_steps):
            by_alpha = search_alpha(execution) is not None
            by_oracle = oracle_linearizable(execution) is not None
            assert by_alpha == by_oracle, f"{model.name} schedule {schedule}"
            verdicts.add(by_alpha)
        return verdicts

    def test_single_collect_three_processes(self):
        scripts = OpScript.from_lists(
            [[OpRequest.update(1)], [OpRequest.update(1)], [OpRequest.scan()]]
        )
        assert self.sweep(SingleCollect(), scripts, 6) == {True, False}

    def test_atomic_mock_two_processes(self):
        scripts = OpScript.from_lists(
            [[OpRequest.update(1), OpRequest.scan()], [OpRequest.scan(), OpRequest.update(2)]]
        )
        assert self.sweep(AtomicMock(), scripts, 6) == {True}
