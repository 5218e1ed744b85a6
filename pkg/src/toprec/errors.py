"""Exception types shared across the package.

Every numerical routine that could silently produce garbage raises one of
these instead; "fail loudly" is a package-wide contract.
"""

from __future__ import annotations


class TopRecError(Exception):
    """Base class for all package errors."""


class SeriesError(TopRecError):
    """Invalid truncated-series operation (bad window, zero division, ...)."""


class TruncationError(SeriesError):
    """A required coefficient lies outside the guaranteed truncation window."""


class CurveError(TopRecError):
    """Malformed or unsupported spectral-curve data."""


class ValidationError(CurveError):
    """A curve failed the goodness checks required before recursion."""


class ContourError(TopRecError):
    """A contour violates a clearance corridor or crosses a tagged pole."""


class QuadratureError(TopRecError):
    """Numerical integration failed to converge to the requested tolerance."""


class RecursionModeError(TopRecError):
    """Requested recursion mode is unsupported for the given curve."""


class DimensionError(TopRecError):
    """Riemann-Roch bookkeeping outside the degree-determined range."""


class ConfigError(TopRecError):
    """Invalid run configuration (CLI exit code 2)."""
