"""Exception hierarchy for the tracematch pipeline.

Every error raised by the library derives from :class:`TraceMatchError` so
callers (and the CLI) can distinguish pipeline failures from programming
errors. Workflow code may attach ``context`` — the (app_id, params) pair a
failure belongs to — before re-raising.
"""

from __future__ import annotations


class TraceMatchError(Exception):
    """Base class for all tracematch pipeline errors."""

    #: optional (app_id, params) set by workflow code to identify the run
    context: tuple | None = None

    def __str__(self) -> str:
        base = super().__str__()
        if self.context is not None:
            app_id, params = self.context
            return f"{base} [app={app_id!r}, params={params}]"
        return base


class InvalidSpec(TraceMatchError, ValueError):
    """A parameter object (filter spec, synth spec, series) is out of range."""


class EmptyTrace(TraceMatchError):
    """An input stream contained no valid data rows."""


class NonMonotonicTimestamps(TraceMatchError):
    """Timestamps run backwards beyond a single midnight wraparound."""


class MalformedLine(TraceMatchError):
    """A CSV line could not be parsed once data rows have begun."""

    def __init__(self, line_number: int, text: str = ""):
        self.line_number = line_number
        detail = f": {text!r}" if text else ""
        super().__init__(f"malformed value on line {line_number}{detail}")


class TraceTooShort(TraceMatchError):
    """A series is too short for the filter's edge padding."""

    def __init__(self, required: int, got: int | None = None):
        self.required = required
        self.got = got
        detail = f", got {got}" if got is not None else ""
        super().__init__(f"trace needs at least {required} samples{detail}")


class ConstantTrace(TraceMatchError):
    """A series has no amplitude range; there is no pattern to match."""


class EmptySeries(TraceMatchError):
    """An alignment input has no samples."""


class LengthMismatch(TraceMatchError):
    """Two series that must have equal length do not."""

    def __init__(self, len_a: int, len_b: int):
        self.len_a = len_a
        self.len_b = len_b
        super().__init__(f"length mismatch: {len_a} vs {len_b}")


class ZeroVariance(TraceMatchError):
    """A series is constant, so its correlation is undefined."""


class DuplicateEntry(TraceMatchError):
    """An (app_id, params) pair is already present in the database."""

    def __init__(self, app_id: str, params):
        self.app_id = app_id
        self.params = params
        super().__init__(f"duplicate entry for app {app_id!r} at {params}")


class StageViolation(TraceMatchError):
    """A series is at the wrong pipeline stage for this operation."""


class MalformedDocument(TraceMatchError):
    """A database document cannot be decoded or fails validation."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnsupportedVersion(TraceMatchError):
    """A database document declares a format version we cannot read."""

    def __init__(self, found):
        self.found = found
        super().__init__(f"unsupported database format version {found!r}")


class EmptyDatabase(TraceMatchError):
    """Matching was requested against a database with no entries."""


class PreprocessingMismatch(TraceMatchError):
    """Caller's preprocessing settings differ from the database header."""
