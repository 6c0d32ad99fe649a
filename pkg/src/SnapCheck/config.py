"""
Runtime configuration for SnapCheck.

Values come from environment variables (optionally via a .env file).
"""

from dataclasses import dataclass
from functools import cache
import logging
import os

from dotenv import find_dotenv, load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_BOUND = 12
DEFAULT_PROGRESS_EVERY = 10_000


@cache
def _load_env_file(cwd: str) -> bool:
    """Load the nearest .env file once per working directory."""
    loaded = load_dotenv(find_dotenv(usecwd=True))
    if loaded:
        logger.debug(f"Loaded .env for {cwd}")
    return loaded


def load_env_file() -> bool:
    return _load_env_file(os.getcwd())


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass
class CheckerConfig:
    """
    Configuration shared by the checker, the oracle and the enumerators.

    Attributes:
        oracle_bound: Maximum number of non-initial events the oracle accepts
        log_level: Log level name used by the CLI
        jobs: Default worker processes for enumerations (1 = in-process)
        progress_every: Log a progress line every N checked executions
    """

    oracle_bound: int = DEFAULT_ORACLE_BOUND
    log_level: str = "INFO"
    jobs: int = 1
    progress_every: int = DEFAULT_PROGRESS_EVERY

    def __post_init__(self):
        if self.oracle_bound < 0:
            raise ValueError(f"oracle_bound must be non-negative, got {self.oracle_bound}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be positive, got {self.jobs}")
        if self.progress_every < 1:
            raise ValueError(
                f"progress_every must be positive, got {self.progress_every}"
            )

    @classmethod
    def from_env(cls) -> "CheckerConfig":
        """
        Load configuration from environment variables.

        Reads (all optional):
        - SNAPCHECK_ORACLE_BOUND
        - SNAPCHECK_LOG_LEVEL
        - SNAPCHECK_JOBS
        - SNAPCHECK_PROGRESS_EVERY

        Returns:
            CheckerConfig instance
        """
        load_env_file()

        config = cls(
            oracle_bound=_int_from_env(
                "SNAPCHECK_ORACLE_BOUND", DEFAULT_ORACLE_BOUND, minimum=0
            ),
            log_level=os.getenv("SNAPCHECK_LOG_LEVEL", "INFO").upper(),
            jobs=_int_from_env("SNAPCHECK_JOBS", 1, minimum=1),
            progress_every=_int_from_env(
                "SNAPCHECK_PROGRESS_EVERY", DEFAULT_PROGRESS_EVERY, minimum=1
            ),
        )
        logger.debug(f"Loaded {config}")
        return config


def oracle_bound_from_env() -> int:
    """Oracle event bound, honouring SNAPCHECK_ORACLE_BOUND."""
    load_env_file()
    return _int_from_env("SNAPCHECK_ORACLE_BOUND", DEFAULT_ORACLE_BOUND, minimum=0)
