"""Structured diagnostics shared by every pipeline stage.

Codes are a stable external contract; messages are free to change between
releases.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

# Spec parsing and grammar validation
E_PARSE = "E_PARSE"
E_BAD_TYPE = "E_BAD_TYPE"
E_MISSING_TONE = "E_MISSING_TONE"
E_TONE_TYPE = "E_TONE_TYPE"
E_TONE_CONTINUED = "E_TONE_CONTINUED"
E_CHANNEL_UNKNOWN = "E_CHANNEL_UNKNOWN"
E_CHANNEL_UNIMPLEMENTED = "E_CHANNEL_UNIMPLEMENTED"
E_MISSING_TIME_CHANNEL = "E_MISSING_TIME_CHANNEL"
E_DURATION_SPEED_CONFLICT = "E_DURATION_SPEED_CONFLICT"
E_CHANNEL_EMPTY = "E_CHANNEL_EMPTY"
E_CHANNEL_CONFLICT = "E_CHANNEL_CONFLICT"
E_TEXT_VALUE_ONLY = "E_TEXT_VALUE_ONLY"
E_TIME_FIELD_REQUIRED = "E_TIME_FIELD_REQUIRED"
E_AGG_FIELD_REQUIRED = "E_AGG_FIELD_REQUIRED"
E_TRANSFORM_UNKNOWN = "E_TRANSFORM_UNKNOWN"
E_DATA_SOURCE = "E_DATA_SOURCE"
E_RANGE_EMPTY = "E_RANGE_EMPTY"
E_RANGE_ARITY = "E_RANGE_ARITY"
E_RANGE_TOO_SHORT = "E_RANGE_TOO_SHORT"
W_RANGE_CLAMPED = "W_RANGE_CLAMPED"
W_UNKNOWN_KEY = "W_UNKNOWN_KEY"
W_SCALE_IGNORED = "W_SCALE_IGNORED"

# Data ingestion and transforms
E_IO = "E_IO"
E_SOURCE_FORMAT = "E_SOURCE_FORMAT"
E_SOURCE_SHAPE = "E_SOURCE_SHAPE"
E_EMPTY_DATASET = "E_EMPTY_DATASET"
E_NO_COLUMNS = "E_NO_COLUMNS"
E_RAGGED_ROWS = "E_RAGGED_ROWS"
E_DUP_COLUMN = "E_DUP_COLUMN"
E_CELL_TYPE = "E_CELL_TYPE"
E_NONFINITE = "E_NONFINITE"
E_UNKNOWN_FIELD = "E_UNKNOWN_FIELD"
E_TYPE_MISMATCH = "E_TYPE_MISMATCH"
E_AGG_TYPE = "E_AGG_TYPE"

# Scale resolution and application
E_ALL_NULL = "E_ALL_NULL"
E_DOMAIN_TYPE = "E_DOMAIN_TYPE"
E_DOMAIN_DUPLICATE = "E_DOMAIN_DUPLICATE"
E_DOMAIN_MISS = "E_DOMAIN_MISS"

# Compilation
W_NULL_TIME = "W_NULL_TIME"
W_NULL_TEXT = "W_NULL_TEXT"
W_NULL_CHANNEL = "W_NULL_CHANNEL"

# Emission
E_SCHEDULE_MALFORMED = "E_SCHEDULE_MALFORMED"
E_SCHEDULE_VERSION = "E_SCHEDULE_VERSION"
W_VOICE_UNMAPPED = "W_VOICE_UNMAPPED"
W_NO_VOICE_MAP = "W_NO_VOICE_MAP"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """One validation or compilation finding, tied to a spec location."""

    severity: Severity
    code: str
    message: str
    path: str = ""

    def __str__(self) -> str:
        return f"{self.severity.value} {self.code} {self.path}: {self.message}"


def error(code: str, message: str, path: str = "") -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, path)


def warning(code: str, message: str, path: str = "") -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, path)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


class PipelineError(Exception):
    """Raised when a pipeline stage cannot produce a result.

    Carries the structured diagnostic so front ends can report it the same
    way as returned diagnostics.
    """

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic
