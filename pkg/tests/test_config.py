import logging

import pytest

from SnapCheck import get_logger, setup_logging
from SnapCheck.config import (
    DEFAULT_ORACLE_BOUND,
    CheckerConfig,
    oracle_bound_from_env,
)

ENV_VARS = (
    "SNAPCHECK_ORACLE_BOUND",
    "SNAPCHECK_LOG_LEVEL",
    "SNAPCHECK_JOBS",
    "SNAPCHECK_PROGRESS_EVERY",
)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """No SNAPCHECK_* variables and no .env file in the working directory."""
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return monkeypatch


class TestCheckerConfig:
    def test_defaults(self, clean_env):
        config = CheckerConfig.from_env()
        assert config.oracle_bound == DEFAULT_ORACLE_BOUND == 12
        assert config.log_level == "INFO"
        assert config.jobs == 1

    def test_environment_overrides(self, clean_env):
        clean_env.setenv("SNAPCHECK_ORACLE_BOUND", "8")
        clean_env.setenv("SNAPCHECK_LOG_LEVEL", "debug")
        clean_env.setenv("SNAPCHECK_JOBS", "4")
        clean_env.setenv("SNAPCHECK_PROGRESS_EVERY", "500")
        config = CheckerConfig.from_env()
        assert (config.oracle_bound, config.log_level, config.jobs, config.progress_every) == (
            8,
            "DEBUG",
            4,
            500,
        )

    def test_blank_value_means_default(self, clean_env):
        clean_env.setenv("SNAPCHECK_JOBS", "  ")
        assert CheckerConfig.from_env().jobs == 1

    def test_non_integer(self, clean_env):
        clean_env.setenv("SNAPCHECK_ORACLE_BOUND", "many")
        with pytest.raises(ValueError, match="SNAPCHECK_ORACLE_BOUND must be an integer"):
            CheckerConfig.from_env()

    def test_below_minimum(self, clean_env):
        clean_env.setenv("SNAPCHECK_JOBS", "0")
        with pytest.raises(ValueError, match="SNAPCHECK_JOBS must be >= 1"):
            CheckerConfig.from_env()

    def test_dotenv_file(self, clean_env, tmp_path):
        (tmp_path / ".env").write_text("SNAPCHECK_ORACLE_BOUND=5\n")
        assert oracle_bound_from_env() == 5

    def test_dotenv_read_once_per_directory(self, clean_env, tmp_path):
        calls = []

        def counting_load(path):
            calls.append(path)
            return False

        clean_env.setattr("SnapCheck.config.load_dotenv", counting_load)
        assert oracle_bound_from_env() == DEFAULT_ORACLE_BOUND
        CheckerConfig.from_env()
        clean_env.setenv("SNAPCHECK_ORACLE_BOUND", "3")
        assert oracle_bound_from_env() == 3
        assert len(calls) == 1

    def test_direct_construction_validates(self):
        with pytest.raises(ValueError, match="jobs must be positive"):
            CheckerConfig(jobs=0)


class TestLogging:
    def test_console_only(self):
        logger = setup_logging(level="DEBUG", file_output=False)
        assert logger.name == "SnapCheck"
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1
        assert not logger.propagate

    def test_repeated_setup_does_not_duplicate_handlers(self):
        setup_logging(file_output=False)
        logger = setup_logging(file_output=False)
        assert len(logger.handlers) == 1

    def test_log_file(self, tmp_path):
        path = tmp_path / "logs" / "run.log"
        setup_logging(level="INFO", log_file=path, console_output=False)
        get_logger("SnapCheck.tests").info("hello from the tests")
        for handler in logging.getLogger("SnapCheck").handlers:
            handler.flush()
        assert "hello from the tests" in path.read_text()

    def test_unknown_level_falls_back_to_info(self):
        logger = setup_logging(level="CHATTY", file_output=False)
        assert logger.level == logging.INFO
