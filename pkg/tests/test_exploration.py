"""
Tests for schedule/skeleton enumeration, counterexample hunts and the reduction check.
"""

import importlib

import pytest

from SnapCheck.algorithms import AtomicMock, DoubleCollectSeq, EvenMask, SingleCollect
from SnapCheck.checking.alpha import search_alpha
from SnapCheck.exploration import (
    HuntBounds,
    SimpleParams,
    assign_simple,
    check_reduction,
    enumerate_schedules,
    enumerate_simple_assignments,
    enumerate_skeletons,
    explore_schedules,
    hunt,
    is_simple,
)
from SnapCheck.exploration.hunt import VerdictMismatchError, is_correct, run_units
from SnapCheck.simulation import OpRequest, OpScript, run
from tests.conftest import slow


def square(x: int) -> int:
    return x * x


class TestEnumerateSchedules:
    def test_one_step(self):
        assert [s.steps for s in enumerate_schedules(2, 1)] == [(), (0,), (1,)]

    def test_prefix_before_extensions(self):
        steps = [s.steps for s in enumerate_schedules(2, 2)]
        assert steps == [(), (0,), (0, 0), (0, 1), (1,), (1, 0), (1, 1)]

    def test_count(self):
        assert sum(1 for _ in enumerate_schedules(3, 3)) == 40

    def test_needs_two_processes(self):
        with pytest.raises(ValueError):
            list(enumerate_schedules(1, 3))


class TestExploreSchedules:
    def test_skips_noop_steps(self):
        scripts = OpScript.from_lists([[OpRequest.scan()], [OpRequest.scan()]])
        steps = [s.steps for s, _ in explore_schedules(AtomicMock(), scripts, 2)]
        assert steps == [(), (0,), (0, 1), (1,), (1, 0)]

    def test_executions_match_replay(self):
        scripts = OpScript.from_lists([[OpRequest.update(1)], [OpRequest.scan()]])
        for schedule, execution in explore_schedules(SingleCollect(), scripts, 4):
            assert execution == run(SingleCollect(), schedule, scripts)

    def test_zero_steps(self):
        scripts = OpScript.from_lists([[OpRequest.scan()], []])
        explored = list(explore_schedules(AtomicMock(), scripts, 0))
        assert len(explored) == 1
        assert explored[0][1].body == ()


class TestSkeletons:
    @pytest.mark.parametrize("n, ops, expected", [(2, 1, 9), (3, 1, 27), (2, 2, 49)])
    def test_count(self, n, ops, expected):
        assert sum(1 for _ in enumerate_skeletons(n, ops)) == expected

    def test_order(self):
        skeletons = [str(s) for s in enumerate_skeletons(2, 1)]
        assert skeletons[:3] == [
            "p0:[] | p1:[]",
            "p0:[] | p1:[scan]",
            "p0:[] | p1:[update]",
        ]
        assert skeletons[-1] == "p0:[update] | p1:[update]"

    def test_arguments_unset(self):
        for skeleton in enumerate_skeletons(2, 2):
            assert all(arg is None for args in skeleton.args() for arg in args)


class TestSimpleAssignments:
    def skeleton(self) -> OpScript:
        return OpScript.from_lists(
            [[OpRequest.update(), OpRequest.scan(), OpRequest.update()], [OpRequest.update()]]
        )

    def test_count(self):
        assert len(list(enumerate_simple_assignments(self.skeleton(), 0, 1))) == 6

    def test_switch_point(self):
        params = SimpleParams(i=0, j=1, r_i=1, r_j=0)
        scripts = assign_simple(self.skeleton(), params)
        assert scripts.args() == ((0, 1), (1,))
        assert is_simple(scripts, params)
        assert not is_simple(scripts, SimpleParams(i=0, j=1, r_i=0, r_j=0))

    def test_third_process_writes_zero(self):
        params = SimpleParams(i=0, j=2, r_i=0, r_j=0)
        assert params.value(1, 5) == 0
        assert params.value(0, 0) == 1

    def test_distinct_processes(self):
        with pytest.raises(ValueError):
            SimpleParams(i=1, j=1, r_i=0, r_j=0)


class TestHuntBounds:
    def test_needs_two_processes(self):
        with pytest.raises(ValueError, match="at least 2"):
            HuntBounds(1, 4, 1)

    def test_str(self):
        assert str(HuntBounds(3, 8, 1)) == "n=3 steps<=8 ops<=1"


class TestHunt:
    def test_single_collect_three_processes(self):
        report = hunt(SingleCollect(), 3, 6, 1)
        assert not report.clean
        found = report.counterexample
        assert found.oracle_verdict is False
        assert not found.diagnosis.correct
        assert is_simple(found.scripts, found.params)
        assert search_alpha(run(SingleCollect(), found.schedule, found.scripts)) is None

    @pytest.mark.parametrize("model", [AtomicMock(), SingleCollect(), DoubleCollectSeq()])
    def test_clean_two_processes(self, model):
        report = hunt(model, 2, 6, 2)
        assert report.clean
        assert report.checked > 0

    @pytest.mark.parametrize("model", [AtomicMock(), DoubleCollectSeq()])
    def test_clean_three_processes(self, model):
        # same bounds that expose SingleCollect
        report = hunt(model, 3, 6, 1)
        assert report.clean
        assert report.checked > 0

    def test_stats_frame(self):
        report = hunt(AtomicMock(), 2, 4, 1)
        frame = report.stats_frame()
        assert list(frame.columns) == ["skeleton", "executions", "counterexample"]
        assert len(frame) == 9
        assert frame["executions"].sum() == report.checked
        assert not frame["counterexample"].any()

    def test_paranoid(self):
        assert hunt(AtomicMock(), 2, 5, 1, paranoid=True).clean
        assert not hunt(SingleCollect(), 3, 6, 1, paranoid=True).clean

    def test_worker_count_does_not_change_result(self):
        serial = hunt(SingleCollect(), 3, 6, 1, jobs=1)
        parallel = hunt(SingleCollect(), 3, 6, 1, jobs=2)
        assert parallel.checked == serial.checked
        assert parallel.counterexample.schedule == serial.counterexample.schedule
        assert parallel.counterexample.scripts == serial.counterexample.scripts

    def test_paranoid_mismatch(self, monkeypatch, crossed_scans):
        # the package re-exports hunt(), which hides the submodule from dotted lookups
        hunt_module = importlib.import_module("SnapCheck.exploration.hunt")
        monkeypatch.setattr(hunt_module, "oracle_linearizable", lambda execution, bound: object())
        with pytest.raises(VerdictMismatchError):
            is_correct(crossed_scans, paranoid=True)


class TestRunUnits:
    def test_in_process(self):
        assert list(run_units(square, [1, 2, 3])) == [1, 4, 9]

    def test_pool_keeps_order(self):
        assert list(run_units(square, range(6), jobs=2)) == [0, 1, 4, 9, 16, 25]


class TestReduction:
    def test_value_sensitive_model_breaches(self):
        report = check_reduction(EvenMask(), (0, 1, 2), 2, 4, 1)
        assert not report.holds
        assert report.breaches
        assert report.general_counterexamples >= len(report.breaches)
        assert report.simple_report.clean
        assert any(2 in args for args in report.breaches[0].scripts.args())

    def test_atomic_mock_holds(self):
        report = check_reduction(AtomicMock(), [2, 0, 1, 1], 2, 4, 1)
        assert report.value_domain == (0, 1, 2)
        assert report.general_counterexamples == 0
        assert report.first_general is None
        assert report.holds

    def test_empty_domain(self):
        with pytest.raises(ValueError, match="non-empty"):
            check_reduction(AtomicMock(), [], 2, 4, 1)

    @slow
    def test_single_collect_holds(self):
        report = check_reduction(SingleCollect(), (0, 1, 2), 3, 6, 1)
        assert report.general_counterexamples >= 1
        assert report.breaches == []
        assert not report.simple_report.clean
        assert report.holds
