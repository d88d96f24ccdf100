"""Exception hierarchy for geodesic-crossings.

All exceptions carry context for reproducing a failure:
- indices: offending point, edge or node indices (if applicable)
- details: extra diagnostic payload (sign values, tolerances, spec text)
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .models.enums import ViolationKind


class GeodesicCrossingsError(Exception):
    """Base exception for all geodesic-crossings errors."""

    def __init__(
        self,
        message: str,
        *,
        indices: tuple[int, ...] | None = None,
        details: Any | None = None,
    ) -> None:
        super().__init__(message)
        self.indices = indices
        self.details = details

    def __str__(self) -> str:
        parts = [super().__str__()]
        if self.indices is not None:
            parts.append(f"indices={list(self.indices)}")
        if self.details is not None:
            raw = str(self.details)
            if len(raw) > 200:
                raw = raw[:200] + "..."
            parts.append(f"details={raw}")
        return " | ".join(parts)


class GeometryError(GeodesicCrossingsError):
    """Geometric predicate could not be evaluated."""


class DegenerateSegment(GeometryError):
    """Segment endpoints coincide or are antipodal."""


class DegenerateConfiguration(GeometryError):
    """Sign test within tolerance of zero (tangent arcs or shared great circle)."""


class GeneralPositionViolation(GeodesicCrossingsError):
    """Point set or drawing is not in general position."""

    def __init__(
        self,
        message: str,
        *,
        kind: ViolationKind,
        indices: tuple[int, ...] | None = None,
        details: Any | None = None,
    ) -> None:
        super().__init__(message, indices=indices, details=details)
        self.kind = kind


class InvalidSpec(GeodesicCrossingsError):
    """Malformed measure spec, blow-up config, pattern or drawing document."""


class TooManyRejections(GeodesicCrossingsError):
    """Resampling budget exhausted while assembling a drawing."""


class OddSize(GeodesicCrossingsError):
    """Antipodal construction needs equal halves."""


class ConfigurationNotCanonical(GeodesicCrossingsError):
    """No antipodal relabeling yields the reference crossing pattern."""


class UnsupportedPattern(GeodesicCrossingsError):
    """Pattern graph outside the exactly countable family."""


class DomainError(GeodesicCrossingsError):
    """Angle or parameter outside its domain."""


class CensusOverflow(GeodesicCrossingsError):
    """Census could exceed 64-bit counters."""
