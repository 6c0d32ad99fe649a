"""Shared fixtures for the SnapCheck test suite."""

import os
from pathlib import Path

import pytest

from SnapCheck.gateway.trace_gateway import load_trace, parse_trace
from SnapCheck.models import Execution

ROOT = Path(__file__).parent.parent
TRACES = ROOT / "data" / "traces"
ALPHAS = ROOT / "data" / "alpha"
SCHEDULES = ROOT / "configs" / "schedules"

# Expensive sweeps run only when SNAPCHECK_SLOW=1
slow = pytest.mark.skipif(
    os.getenv("SNAPCHECK_SLOW") != "1", reason="set SNAPCHECK_SLOW=1 to run exhaustive sweeps"
)


def trace(text: str) -> Execution:
    """Parse an inline trace, dedenting each line."""
    return parse_trace("\n".join(line.strip() for line in text.strip().splitlines()))


@pytest.fixture
def first_execution() -> Execution:
    """p0: update(1), scan -> (1,2); p1: update(2), update(3)."""
    return load_trace(TRACES / "first_execution.trace")


@pytest.fixture
def crossed_scans() -> Execution:
    """Two scans reporting each other's later write: not linearizable."""
    return load_trace(TRACES / "crossed_scans.trace")


@pytest.fixture
def sequential() -> Execution:
    return trace(
        """
        n=2
        1 update 0 1 arg=5
        0 update 2 3 arg=7
        0 scan 4 5 ret=7,5
        """
    )


@pytest.fixture(autouse=True)
def _no_bound_override(monkeypatch):
    monkeypatch.delenv("SNAPCHECK_ORACLE_BOUND", raising=False)
