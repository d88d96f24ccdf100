"""Pydantic models for configurations, censuses and estimates."""

from .base import GeoBaseModel
from .blowup import AngleQuad, BlowupConfig, BlowupMetadata, default_radius
from .census import (
    BundlePairCount,
    CrossingCensus,
    CrossingPrediction,
    NodeCrossingCount,
    NodePrediction,
    TriangleCensus,
    TrianglePrediction,
)
from .drawing import DrawingDocument, Violation
from .enums import CrossingType, Node, RotationMode, ViolationKind
from .estimate import ConvergenceRow, DensityEstimate, PatternGraph, SweepRow
from .measure import (
    CircleFamily,
    MeasureSpec,
    Symmetrized,
    UniformSphere,
    VonMisesFisher,
    dump_measure_spec,
    parse_measure_spec,
)

__all__ = [
    "AngleQuad",
    "BlowupConfig",
    "BlowupMetadata",
    "BundlePairCount",
    "CircleFamily",
    "ConvergenceRow",
    "CrossingCensus",
    "CrossingPrediction",
    "CrossingType",
    "DensityEstimate",
    "DrawingDocument",
    "GeoBaseModel",
    "MeasureSpec",
    "Node",
    "NodeCrossingCount",
    "NodePrediction",
    "PatternGraph",
    "RotationMode",
    "SweepRow",
    "Symmetrized",
    "TriangleCensus",
    "TrianglePrediction",
    "UniformSphere",
    "Violation",
    "ViolationKind",
    "VonMisesFisher",
    "default_radius",
    "dump_measure_spec",
    "parse_measure_spec",
]
