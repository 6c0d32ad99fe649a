"""
Tests for alpha assignments: the six properties, search and diagnosis.
"""

import pytest

from SnapCheck.checking.alpha import (
    AlphaAssignment,
    AlphaMismatchError,
    alpha_less,
    check_properties,
    diagnose,
    iter_correct_alphas,
    replay_violation,
    search_alpha,
)
from SnapCheck.gateway.report_gateway import load_alpha, parse_alpha
from SnapCheck.gateway.trace_gateway import TraceSyntaxError
from SnapCheck.models import Execution
from tests.conftest import ALPHAS, trace


def assign(execution: Execution, *entries: tuple[int, str, str]) -> AlphaAssignment:
    """Alpha from (i, scan id, update id) triples."""
    return AlphaAssignment.from_pairs(
        execution.n, ((i, s, execution.event(u)) for i, s, u in entries)
    )


def crossed_alpha(execution: Execution) -> AlphaAssignment:
    # the only assignment whose values match the returns
    return assign(
        execution,
        (0, "p0.1", "p0.init"),
        (1, "p0.1", "p1.2"),
        (0, "p1.1", "p0.2"),
        (1, "p1.1", "p1.init"),
    )


# Two p1 writes; the scan reports the first although the second precedes it
STALE_READ = """
    n=2
    1 update 0 1 arg=1
    1 update 2 3 arg=2
    0 scan 4 5 ret=0,1
"""

# Two scans of p0; the later one forgets p1's write
FORGETFUL_SCANS = """
    n=2
    1 update 0 1 arg=1
    0 scan 2 3 ret=0,1
    0 scan 4 5 ret=0,0
"""

# p1's scan sees p0's first write and p2's write, but p0's second write lies between
SKIPPED_WRITE = """
    n=3
    0 update 0 1 arg=1
    0 update 2 10 arg=2
    1 scan 3 15 ret=1,0,5
    2 update 11 12 arg=5
"""

# Both p1 writes carry the same value, so two witnesses exist
DUPLICATE_VALUES = """
    n=2
    1 update 0 3 arg=1
    1 update 4 7 arg=1
    0 scan 2 9 ret=0,1
"""


class TestAlphaAssignment:
    def test_call_by_event_or_id(self, first_execution):
        alpha = load_alpha(ALPHAS / "first_execution.alpha", first_execution)
        scan = first_execution.event("p0.2")
        assert alpha(0, scan).id == "p0.1"
        assert alpha(1, "p0.2").id == "p1.1"
        assert alpha.scan_ids == frozenset({"p0.2"})

    def test_repeated_entry_rejected(self, first_execution):
        with pytest.raises(AlphaMismatchError, match="assigned twice"):
            assign(first_execution, (0, "p0.2", "p0.1"), (0, "p0.2", "p0.init"))

    def test_index_out_of_range(self, first_execution):
        with pytest.raises(AlphaMismatchError):
            assign(first_execution, (2, "p0.2", "p0.1"))

    def test_items_sorted(self, crossed_scans):
        entries = [(i, s, u.id) for i, s, u in crossed_alpha(crossed_scans).items()]
        assert entries == [
            (0, "p0.1", "p0.init"),
            (0, "p1.1", "p0.2"),
            (1, "p0.1", "p1.2"),
            (1, "p1.1", "p1.init"),
        ]


class TestCheckProperties:
    def test_first_execution_alpha_is_correct(self, first_execution):
        alpha = load_alpha(ALPHAS / "first_execution.alpha", first_execution)
        assert check_properties(first_execution, alpha) == []

    def test_crossed_scans(self, crossed_scans):
        violations = check_properties(crossed_scans, crossed_alpha(crossed_scans))
        assert [str(v) for v in violations] == [
            "P2 scan=p0.1 i=1 update=p1.2",
            "P6 scan=p0.1 scan2=p1.1 i=0 j=1",
        ]

    def test_wrong_value_is_property_one(self, first_execution):
        alpha = assign(first_execution, (0, "p0.2", "p0.init"), (1, "p0.2", "p1.1"))
        violations = check_properties(first_execution, alpha)
        assert violations[0].property == 1
        assert str(violations[0]) == "P1 scan=p0.2 i=0 update=p0.init"

    def test_scan_before_its_update(self):
        execution = trace(
            """
            n=2
            0 scan 0 3 ret=0,1
            1 update 5 8 arg=1
            """
        )
        alpha = assign(execution, (0, "p0.1", "p0.init"), (1, "p0.1", "p1.1"))
        assert [str(v) for v in check_properties(execution, alpha)] == [
            "P2 scan=p0.1 i=1 update=p1.1"
        ]

    def test_stale_read(self):
        execution = trace(STALE_READ)
        alpha = assign(execution, (0, "p0.1", "p0.init"), (1, "p0.1", "p1.1"))
        assert [str(v) for v in check_properties(execution, alpha)] == [
            "P3 scan=p0.1 i=1 update=p1.2"
        ]

    def test_forgetful_scans(self):
        execution = trace(FORGETFUL_SCANS)
        alpha = assign(
            execution,
            (0, "p0.1", "p0.init"),
            (1, "p0.1", "p1.1"),
            (0, "p0.2", "p0.init"),
            (1, "p0.2", "p1.init"),
        )
        assert [str(v) for v in check_properties(execution, alpha)] == [
            "P3 scan=p0.2 i=1 update=p1.1",
            "P4 scan=p0.1 scan2=p0.2 i=1 update=p1.1",
        ]

    def test_skipped_write(self):
        execution = trace(SKIPPED_WRITE)
        alpha = assign(
            execution,
            (0, "p1.1", "p0.1"),
            (1, "p1.1", "p1.init"),
            (2, "p1.1", "p2.1"),
        )
        assert [str(v) for v in check_properties(execution, alpha)] == [
            "P5 scan=p1.1 i=0 j=2 update=p0.2"
        ]

    def test_foreign_update_rejected(self, first_execution):
        alpha = assign(first_execution, (0, "p0.2", "p1.1"), (1, "p0.2", "p1.1"))
        with pytest.raises(AlphaMismatchError, match="not a p0-update"):
            check_properties(first_execution, alpha)

    def test_missing_scan_rejected(self, first_execution):
        with pytest.raises(AlphaMismatchError, match="domain differs"):
            check_properties(first_execution, AlphaAssignment.from_pairs(2, []))

    def test_violations_replay(self, crossed_scans):
        alpha = crossed_alpha(crossed_scans)
        violations = check_properties(crossed_scans, alpha)
        assert violations
        for violation in violations:
            assert replay_violation(crossed_scans, alpha, violation)

    def test_replay_rejects_fixed_witness(self, first_execution):
        alpha = load_alpha(ALPHAS / "first_execution.alpha", first_execution)
        crossed = check_properties(
            first_execution,
            assign(first_execution, (0, "p0.2", "p0.init"), (1, "p0.2", "p1.1")),
        )[0]
        assert not replay_violation(first_execution, alpha, crossed)


class TestAlphaLess:
    def test_crossed_scans_are_mutually_less(self, crossed_scans):
        alpha = crossed_alpha(crossed_scans)
        s1, s2 = crossed_scans.event("p0.1"), crossed_scans.event("p1.1")
        assert alpha_less(alpha, s1, s2)
        assert alpha_less(alpha, s2, s1)

    def test_scan_is_not_less_than_itself(self, first_execution):
        alpha = load_alpha(ALPHAS / "first_execution.alpha", first_execution)
        scan = first_execution.event("p0.2")
        assert not alpha_less(alpha, scan, scan)


class TestSearchAlpha:
    def test_first_execution(self, first_execution):
        alpha = search_alpha(first_execution)
        assert alpha is not None
        assert alpha(0, "p0.2").id == "p0.1"
        assert alpha(1, "p0.2").id == "p1.1"

    def test_sequential(self, sequential):
        alpha = search_alpha(sequential)
        assert [u.id for _, _, u in alpha.items()] == ["p0.1", "p1.1"]

    def test_found_alpha_passes_check(self, first_execution, sequential):
        for execution in (first_execution, sequential):
            assert check_properties(execution, search_alpha(execution)) == []

    @pytest.mark.parametrize("text", [STALE_READ, FORGETFUL_SCANS, SKIPPED_WRITE])
    def test_no_witness(self, text):
        assert search_alpha(trace(text)) is None

    def test_crossed_scans(self, crossed_scans):
        assert search_alpha(crossed_scans) is None

    def test_execution_without_scans(self):
        alpha = search_alpha(trace("n=2\n0 update 0 1 arg=3\n1 scan 2 pending"))
        assert alpha is not None
        assert alpha.scan_ids == frozenset()

    def test_duplicate_values_prefer_earliest(self):
        alpha = search_alpha(trace(DUPLICATE_VALUES))
        assert alpha(1, "p0.1").id == "p1.1"


class TestIterCorrectAlphas:
    def test_unique_witness(self, first_execution):
        assert len(list(iter_correct_alphas(first_execution))) == 1

    def test_duplicate_values(self):
        execution = trace(DUPLICATE_VALUES)
        found = [alpha(1, "p0.1").id for alpha in iter_correct_alphas(execution)]
        assert found == ["p1.1", "p1.2"]

    def test_none_for_crossed(self, crossed_scans):
        assert list(iter_correct_alphas(crossed_scans)) == []


class TestDiagnose:
    def test_correct_execution(self, first_execution):
        diagnosis = diagnose(first_execution)
        assert diagnosis.correct
        assert diagnosis.lines() == []

    def test_crossed_scans(self, crossed_scans):
        diagnosis = diagnose(crossed_scans)
        assert not diagnosis.correct
        assert diagnosis.exhausted
        assert diagnosis.lines() == [
            "P2 scan=p0.1 i=1 update=p1.2",
            "P6 scan=p0.1 scan2=p1.1 i=0 j=1",
        ]

    def test_value_never_written(self):
        diagnosis = diagnose(trace("n=2\n0 scan 0 1 ret=9,0"))
        assert diagnosis.alpha is None
        assert diagnosis.lines() == ["P1 scan=p0.1 i=0 no-candidate"]

    def test_stale_read(self):
        assert diagnose(trace(STALE_READ)).lines() == ["P3 scan=p0.1 i=1 update=p1.2"]


class TestAlphaFile:
    def test_unknown_event(self, first_execution):
        with pytest.raises(AlphaMismatchError, match="unknown event"):
            parse_alpha("alpha 0 p0.2 p7.1\n", first_execution)

    def test_malformed_line(self, first_execution):
        with pytest.raises(TraceSyntaxError) as excinfo:
            parse_alpha("# header\nalpha 0 p0.2\n", first_execution)
        assert excinfo.value.line_number == 2
