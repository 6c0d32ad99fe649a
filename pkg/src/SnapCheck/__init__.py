"""SnapCheck - Linearizability checking for snapshot objects."""

from SnapCheck.logging_config import setup_logging, get_logger

__all__ = ["setup_logging", "get_logger"]
