"""Error handling and logging infrastructure.

Provides the exception hierarchy (each error knows its process exit code) and
centralized logging so failures are visible instead of silently swallowed.
Logs to file (configurable) and to the console via rich.
"""

from __future__ import annotations

import logging
import traceback
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler

from revertbench.config import CONFIG
from revertbench.enums import ExitCode

# Configure module logger
log = logging.getLogger("revertbench")


class RevertbenchError(Exception):
    """Base class for errors reported to the user with an exit code."""

    exit_code: ExitCode = ExitCode.VALIDATION


class ValidationError(RevertbenchError, ValueError):
    """Invalid parameters, flags, or configuration."""

    exit_code = ExitCode.VALIDATION


class InfeasibleConstraintError(ValidationError):
    """A linear constraint cannot be met anywhere on the simplex."""


class DataError(RevertbenchError, ValueError):
    """Unreadable or invalid market data.

    Args:
        message: What went wrong.
        row: 1-based data row (header excluded), if known.
        column: Asset identifier, if known.
    """

    exit_code = ExitCode.DATA

    def __init__(
        self, message: str, row: int | None = None, column: str | None = None
    ) -> None:
        self.row = row
        self.column = column
        if row is not None and column is not None:
            message = f"{message} at ({row}, {column})"
        elif row is not None:
            message = f"{message} at row {row}"
        elif column is not None:
            message = f"{message} in column {column}"
        super().__init__(message)


class EmptyUniverseError(DataError):
    """Every asset was excluded."""


def setup_logging(level: int = logging.DEBUG) -> None:
    """Initialize logging. Call once at startup.

    Configures the root 'revertbench' logger so all child loggers
    (revertbench.backtest.engine, revertbench.market.io, etc.) inherit the
    handlers.

    Reads configuration from ~/.revertbench.yaml:
    - logging.file: Path to log file, "default" for ~/revertbench.log,
      or null to disable (default: null)
    - logging.console-level: Min level echoed to stderr (default: warning)
    """
    # Guard against being called multiple times
    if log.handlers:
        return

    log.setLevel(level)
    log.propagate = False  # Avoid duplicates if root logger is configured

    log_file = CONFIG.get("logging", {}).get("file")
    if log_file == "default":
        log_file = str(Path.home() / "revertbench.log")
    if log_file:
        log_file = str(Path(log_file).expanduser())
        try:
            file_handler = logging.FileHandler(log_file, mode="a")
            file_handler.setFormatter(
                logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
            )
            file_handler.setLevel(level)
            log.addHandler(file_handler)
        except OSError:
            # Can't write to log file - continue without file logging
            log_file = None

    console_level_str = CONFIG.get("logging", {}).get("console-level", "warning")
    if console_level_str:
        console_level = getattr(logging, console_level_str.upper(), logging.WARNING)
        console_handler = RichHandler(
            console=Console(stderr=True), show_time=False, show_path=False
        )
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        console_handler.setLevel(console_level)
        log.addHandler(console_handler)

    if log_file:
        log.info("Logging initialized")


def log_exception(e: Exception, context: str = "") -> str:
    """Log an exception with context. Returns formatted message for display."""
    tb = "".join(traceback.format_exception(type(e), e, e.__traceback__))
    if context:
        log.debug(f"{context}: {e}\n{tb}")
        return f"{context}: {e}"
    else:
        log.debug(f"{e}\n{tb}")
        return str(e)
