"""Exception types shared across the package.

The HTTP layer maps these onto status codes (see service.py), so raise the
most specific class available.
"""


class SaxploreError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SaxploreError):
    """Malformed input data. Carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateSampleError(ParseError):
    """Two samples share the same (series_id, timestamp)."""


class EmptyDatasetError(SaxploreError):
    """The input contained no samples at all."""


class StateError(SaxploreError):
    """Operation applied to a value in the wrong state (e.g. double-normalize)."""


class DegenerateDataError(SaxploreError):
    """Data has no usable variance (e.g. all pooled values identical)."""


class InvalidValueError(SaxploreError):
    """A non-finite or otherwise unusable numeric value."""


class SizeError(SaxploreError):
    """A collection is too small for the requested operation."""


class OversizeError(SaxploreError):
    """Upload exceeds the configured series cap."""


class NotFoundError(SaxploreError):
    """Unknown session, node, or series id."""


class PatternError(SaxploreError):
    """A query pattern that does not compile or is structurally invalid."""
