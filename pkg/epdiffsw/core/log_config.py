"""
EPDiff-SW - Structured Logging
structlog setup shared by the library and the CLI
"""

import logging
import sys

import structlog

from epdiffsw.core.config import settings


def _stderr_logger(*args) -> structlog.PrintLogger:
    # Looked up per logger so a replaced or closed sys.stderr is never kept.
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """
    Configure structlog processors and output

    Logs go to stderr so that CSV written to stdout (greens-table, verify
    reports) stays machine-readable.

    Args:
        level: Log level name, defaults to settings.LOG_LEVEL
        fmt: "console" or "json", defaults to settings.LOG_FORMAT
    """
    level_name = (level or settings.LOG_LEVEL).upper()
    renderer = (
        structlog.processors.JSONRenderer()
        if (fmt or settings.LOG_FORMAT) == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level_name)
        ),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
