"""
Logging configuration for lambda-epsilon.

Command results go to stdout, so every log record goes to stderr. On a
terminal the records are rendered by rich; otherwise (pipes, CI, worker
processes) a plain one-line format is used.
"""

import logging
import sys
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "lambda_epsilon"

PLAIN_FORMAT = "%(levelname)s: %(message)s"
DETAILED_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# -v, -vv
VERBOSITY_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def resolve_level(level: Optional[str] = None, verbose: int = 0) -> int:
    """An explicit level name wins over the -v count."""
    if level is not None:
        return getattr(logging, level.upper(), logging.WARNING)
    return VERBOSITY_LEVELS[min(max(verbose, 0), len(VERBOSITY_LEVELS) - 1)]


def _handler(format_detailed: bool, rich: bool) -> logging.Handler:
    if rich:
        handler: logging.Handler = RichHandler(
            console=Console(stderr=True),
            show_time=format_detailed,
            show_path=format_detailed,
            markup=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))
        return handler

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter(DETAILED_FORMAT if format_detailed else PLAIN_FORMAT)
    )
    return handler


def setup_logging(
    level: Optional[str] = None,
    format_detailed: bool = False,
    verbose: int = 0,
    rich: Optional[bool] = None,
) -> logging.Logger:
    """
    Configure the package logger.

    Args:
        level: DEBUG, INFO, WARNING or ERROR; overrides `verbose`
        format_detailed: add timestamps and logger names
        verbose: number of -v flags (1 for INFO, 2 for DEBUG)
        rich: force or suppress rich rendering; by default rich is used
              when stderr is a terminal

    Returns:
        The `lambda_epsilon` logger
    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    numeric_level = resolve_level(level, verbose)
    if rich is None:
        rich = sys.stderr.isatty()

    # Repeated calls (tests, the module entry point then main) replace the handler
    logger.handlers.clear()
    handler = _handler(format_detailed, rich)
    handler.setLevel(numeric_level)
    logger.addHandler(handler)
    logger.setLevel(numeric_level)
    logger.propagate = False
    return logger


def worker_initializer(level: int) -> None:
    """ProcessPoolExecutor initializer: plain stderr logging at the parent's level."""
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(PLAIN_FORMAT))
    handler.setLevel(level)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def current_level() -> int:
    return logging.getLogger(PACKAGE_LOGGER).getEffectiveLevel()


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger below the package namespace.

    Args:
        name: Module name (usually __name__)
    """
    if name is None:
        return logging.getLogger(PACKAGE_LOGGER)

    if not name.startswith(PACKAGE_LOGGER):
        if name.startswith("__main__"):
            name = f"{PACKAGE_LOGGER}.main"
        else:
            name = f"{PACKAGE_LOGGER}.{name.split('.')[-1]}"

    return logging.getLogger(name)
