"""
Exception hierarchy shared by every app.

Each class carries the exit code the command-line entry point returns when
the error escapes a subcommand:

    1 — usage / parameter errors
    2 — data errors (missing files, malformed CSV, shape mismatches)
    3 — numeric errors (non-finite inputs, failed factorizations)
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class ToolkitError(Exception):
    """Base class for all errors raised by the toolkit services."""

    exit_code = EXIT_USAGE


# ---------------------------------------------------------------------------
# Usage errors
# ---------------------------------------------------------------------------

class ParameterError(ToolkitError, ValueError):
    """Raised when a hyper-parameter or argument value is out of range."""


class ConfigurationError(ToolkitError):
    """Raised when a combination of settings cannot be honoured."""


# ---------------------------------------------------------------------------
# Data errors
# ---------------------------------------------------------------------------

class DataError(ToolkitError):
    """Base class for problems with input data."""

    exit_code = EXIT_DATA


class DatasetNotFoundError(DataError):
    """Raised when a dataset or manifest file does not exist."""


class DatasetFormatError(DataError):
    """Raised when a dataset file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyDatasetError(DataError):
    """Raised when a dataset file holds no samples."""


class LabelRangeError(DataError):
    """Raised when a label falls outside [0, num_classes)."""


class ShapeError(DataError):
    """Raised when matrix dimensions do not agree."""


class ProtocolError(DataError):
    """Raised when an evaluation protocol cannot be applied to the data."""


# ---------------------------------------------------------------------------
# Numeric errors
# ---------------------------------------------------------------------------

class NumericError(ToolkitError):
    """Raised on non-finite values or a failed linear solve."""

    exit_code = EXIT_NUMERIC
