"""Shared errors, logging setup and formatting helpers for preftree."""

import sys
from contextlib import contextmanager
from typing import Iterator, Optional

from loguru import logger


# ============== Exit Codes ==============

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


# Pipeline step letters and what they do
STEPS = {
    "b": "collect and preprocess survey responses",
    "c": "combine simple attributes into composites",
    "d": "classify composites into groups",
    "e": "discriminant ranking of groups",
    "f": "within-group correlation",
    "g": "feature selection on composite pairs",
    "h": "maximum spanning forest",
    "i": "assemble preference model",
}


# ============== Errors ==============

class PrefTreeError(Exception):
    """Base error; carries the CLI exit code and the pipeline step it escaped from."""

    exit_code = EXIT_INPUT

    def __init__(self, message: str, step: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.step = step

    def __str__(self) -> str:
        if self.step:
            return f"[step {self.step}] {self.message}"
        return self.message


class InputError(PrefTreeError, ValueError):
    """Malformed or inconsistent input data."""

    exit_code = EXIT_INPUT


class SchemaError(InputError):
    """Attribute schema is invalid or does not match the survey table."""


class ImputationError(InputError):
    """A column has no observed values to impute from."""


class DimensionError(InputError):
    """Vector or matrix sizes disagree."""


class GraphTooLargeError(InputError):
    """Graph exceeds the exhaustive enumeration bound."""


class NumericalError(PrefTreeError, ArithmeticError):
    """A required numerical quantity could not be computed."""

    exit_code = EXIT_NUMERICAL


class SingularCovarianceError(NumericalError):
    """Pooled within-class covariance is not positive-definite."""

    def __init__(self, message: str, features: Optional[list[str]] = None, step: Optional[str] = None):
        super().__init__(message, step=step)
        self.features = features or []


class DataFileError(PrefTreeError):
    """An input file is missing or unreadable, or an output cannot be written."""

    exit_code = EXIT_IO


@contextmanager
def pipeline_step(letter: str) -> Iterator[None]:
    """Tag errors escaping a pipeline stage with its step letter."""
    logger.info(f"step {letter}: {STEPS[letter]}")
    try:
        yield
    except PrefTreeError as e:
        if e.step is None:
            e.step = letter
        raise
    except OSError as e:
        raise DataFileError(f"{e.strerror or e}: {e.filename}", step=letter) from e


# ============== Logging ==============

def configure_logging(level: str = "WARNING") -> None:
    """Route log records to stderr at the given level."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=level.upper(),
        format="{time:YYYY-MM-DD HH:mm:ss} | {level:<8} | {message}",
    )


# ============== Formatting ==============

def fixed(value: Optional[float], decimals: int = 6) -> str:
    """Format a real with a fixed number of decimals; undefined renders as 'undefined'."""
    if value is None:
        return "undefined"
    text = f"{value:.{decimals}f}"
    # avoid "-0.000000"
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text
