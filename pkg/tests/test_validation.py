from dataclasses import replace

from SnapCheck.checking.validation import FindingCode, validate
from SnapCheck.models import Execution, initial_update, make_event
from tests.conftest import trace


def codes_of(text: str) -> list[FindingCode]:
    return validate(trace(text)).codes()


class TestWellFormed:
    def test_data_traces_are_valid(self, first_execution, crossed_scans, sequential):
        for execution in (first_execution, crossed_scans, sequential):
            report = validate(execution)
            assert report.is_valid, [str(f) for f in report.findings]

    def test_empty_trace_is_valid(self):
        assert validate(trace("n=3")).is_valid

    def test_trailing_pending_event_is_valid(self):
        report = validate(
            trace(
                """
                n=2
                0 update 0 3 arg=1
                0 scan 4 pending
                1 update 1 pending arg=2
                """
            )
        )
        assert report.is_valid


class TestProcessOrder:
    def test_intra_process_overlap(self):
        report = validate(
            trace(
                """
                n=2
                0 update 0 5 arg=1
                0 update 3 8 arg=2
                """
            )
        )
        assert report.codes() == [FindingCode.INTRA_PROCESS_OVERLAP]
        assert report.findings[0].event_ids == ("p0.1", "p0.2")

    def test_event_after_pending(self):
        codes = codes_of(
            """
            n=2
            1 update 0 pending arg=1
            1 scan 4 7 ret=0,1
            """
        )
        assert codes == [FindingCode.PENDING_NOT_LAST]

    def test_finding_text(self):
        report = validate(
            trace(
                """
                n=2
                0 update 0 5 arg=1
                0 update 3 8 arg=2
                """
            )
        )
        assert str(report.findings[0]).startswith("INVALID intra-process overlap events=p0.1,p0.2")


class TestFields:
    def test_arity_mismatch(self):
        assert codes_of("n=2\n0 scan 0 1 ret=0,0,0") == [FindingCode.ARITY_MISMATCH]

    def test_missing_return(self):
        assert codes_of("n=2\n0 scan 0 1") == [FindingCode.MISSING_RETURN]

    def test_missing_argument(self):
        assert codes_of("n=2\n0 update 0 1") == [FindingCode.MISSING_ARGUMENT]

    def test_scan_with_argument(self):
        assert codes_of("n=2\n0 scan 0 1 arg=4 ret=0,0") == [FindingCode.UNEXPECTED_FIELD]

    def test_update_with_return(self):
        assert codes_of("n=2\n0 update 0 1 arg=4 ret=0,0") == [FindingCode.UNEXPECTED_FIELD]

    def test_pid_out_of_range(self):
        assert FindingCode.PID_OUT_OF_RANGE in codes_of("n=2\n2 update 0 1 arg=1")

    def test_start_not_before_end(self):
        assert FindingCode.START_NOT_BEFORE_END in codes_of("n=2\n0 update 5 3 arg=1")


class TestTimestamps:
    def test_duplicate_timestamp_across_processes(self):
        report = validate(
            trace(
                """
                n=2
                0 update 0 3 arg=1
                1 update 3 6 arg=2
                """
            )
        )
        assert report.codes() == [FindingCode.DUPLICATE_TIMESTAMP]
        assert set(report.findings[0].event_ids) == {"p0.1", "p1.1"}

    def test_negative_timestamp_collides_with_initial(self):
        # p0.init occupies (-4, -3) when n=2
        codes = codes_of("n=2\n1 update -4 2 arg=1")
        assert FindingCode.DUPLICATE_TIMESTAMP in codes
        assert FindingCode.INITIAL_NOT_FIRST in codes


class TestInitials:
    def test_missing_initial(self):
        execution = Execution(
            n=2,
            events=(
                initial_update(0, 2),
                replace(make_event(1, "update", 0, 1, arg=1), id="p1.1"),
            ),
        )
        assert validate(execution).codes() == [FindingCode.MISSING_INITIAL]

    def test_duplicate_initial(self):
        first = initial_update(0, 2)
        second = initial_update(0, 3)
        execution = Execution(n=2, events=(first, second, initial_update(1, 2)))
        codes = validate(execution).codes()
        assert FindingCode.DUPLICATE_INITIAL in codes
