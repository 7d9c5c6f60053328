"""
Logging Configuration
=====================
Unified logging setup using Rich for console output. The level comes from
ANALOGMP_LOG_LEVEL, the `log_level` key of a run file, or `--verbose`.
"""

import logging
from typing import Optional

from rich.logging import RichHandler

from config import LOG_LEVEL


def setup_logger(level: Optional[str] = None):
    """
    Configure the root logger with a RichHandler at `level` (default LOG_LEVEL).
    """
    level = (level or LOG_LEVEL).upper()
    handler = RichHandler(rich_tracebacks=True)
    handler.setLevel(level)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )

    # networkx and matplotlib backends can be chatty at DEBUG
    logging.getLogger("networkx").setLevel(logging.WARNING)
    logging.getLogger("matplotlib").setLevel(logging.WARNING)


def set_level(level: str) -> None:
    """Move the root logger and its Rich handlers to `level`."""
    root = logging.getLogger()
    root.setLevel(level.upper())
    for handler in root.handlers:
        if isinstance(handler, RichHandler):
            handler.setLevel(level.upper())


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.
    """
    return logging.getLogger(name)
