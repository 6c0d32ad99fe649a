"""
Schedule Gateway - Loads simulation inputs from JSON schedule files.

Format:
    {
        "n": 2,
        "init": 0,                                   (optional)
        "scripts": [[{"op": "update", "arg": 1}, {"op": "scan"}], ...],
        "schedule": [1, 0, 1, ...]
    }
"""

from dataclasses import dataclass
import json
import logging
from pathlib import Path

from SnapCheck.simulation.simulator import OpScript, Schedule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationInput:
    """Everything run() needs besides the model."""

    scripts: OpScript
    schedule: Schedule
    initial_value: int = 0


def parse_schedule(data: dict) -> SimulationInput:
    """
    Build simulation input from a decoded schedule file.

    Raises:
        ValueError: missing keys, or n disagreeing with the scripts or schedule
    """
    missing = [key for key in ("scripts", "schedule") if key not in data]
    if missing:
        raise ValueError(f"Schedule file is missing {missing}")

    try:
        scripts = OpScript.parse(data["scripts"])
    except (KeyError, TypeError) as e:
        raise ValueError(f"Malformed scripts: {e}") from None
    n = int(data.get("n", scripts.n))
    if n != scripts.n:
        raise ValueError(f"n={n} but {scripts.n} scripts given")

    schedule = Schedule(tuple(int(pid) for pid in data["schedule"]))
    schedule.check_processes(n)
    return SimulationInput(scripts, schedule, int(data.get("init", 0)))


def load_schedule(path: str | Path) -> SimulationInput:
    """Read and parse a JSON schedule file."""
    schedule_path = Path(path)
    if not schedule_path.exists():
        raise FileNotFoundError(f"Schedule file not found: {schedule_path}")
    try:
        data = json.loads(schedule_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{schedule_path}: invalid JSON ({e})") from None
    loaded = parse_schedule(data)
    logger.debug(f"Loaded schedule file {schedule_path}: {loaded.scripts}")
    return loaded
