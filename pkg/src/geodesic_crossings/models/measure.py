"""Probability measures on the sphere, as pydantic models."""

from __future__ import annotations

import math
from typing import Annotated, Any, Literal

from pydantic import AfterValidator, Field, TypeAdapter, ValidationError, field_validator

from ..const import NORM_EPS
from ..exceptions import InvalidSpec
from .base import GeoBaseModel

Triple = tuple[float, float, float]


def _check_unit(v: Triple) -> Triple:
    norm2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
    if abs(norm2 - 1.0) > NORM_EPS:
        raise ValueError(f"not a unit vector (|v|²={norm2!r})")
    return v


UnitTriple = Annotated[Triple, AfterValidator(_check_unit)]


class UniformSphere(GeoBaseModel):
    """Uniform (surface area) measure on S²."""

    type: Literal["uniform"] = "uniform"


class CircleFamily(GeoBaseModel):
    """Uniform mixture of circles of angular radius ``radius`` about ``centers``."""

    type: Literal["circles"] = "circles"
    centers: list[UnitTriple] = Field(min_length=1)
    radius: float

    @field_validator("radius")
    @classmethod
    def check_radius(cls, v: float) -> float:
        """Radius must lie in (0, π/2)."""
        if not 0.0 < v < math.pi / 2:
            raise ValueError(f"radius must be in (0, pi/2), got {v}")
        return v

    @field_validator("centers")
    @classmethod
    def check_distinct(cls, v: list[Triple]) -> list[Triple]:
        """Centers must be pairwise distinct."""
        for i, p in enumerate(v):
            for q in v[i + 1 :]:
                d2 = sum((a - b) ** 2 for a, b in zip(p, q, strict=True))
                if d2 <= NORM_EPS:
                    raise ValueError(f"duplicate circle center {p}")
        return v


class VonMisesFisher(GeoBaseModel):
    """von Mises–Fisher distribution on S² with mean direction and concentration."""

    type: Literal["vmf"] = "vmf"
    mean: UnitTriple
    kappa: float = Field(gt=0.0)


class Symmetrized(GeoBaseModel):
    """Inner measure mixed with its antipodal image."""

    type: Literal["symmetrized"] = "symmetrized"
    inner: MeasureSpec


MeasureSpec = Annotated[
    UniformSphere | CircleFamily | VonMisesFisher | Symmetrized,
    Field(discriminator="type"),
]

Symmetrized.model_rebuild()

_MEASURE_ADAPTER: TypeAdapter[MeasureSpec] = TypeAdapter(MeasureSpec)


def parse_measure_spec(data: dict[str, Any] | str) -> MeasureSpec:
    """Validate a MeasureSpec from a decoded JSON object or JSON text.

    Args:
        data: {"type": "uniform"} | {"type": "circles", ...} | {"type": "symmetrized", ...}

    Returns:
        The validated measure variant

    Raises:
        InvalidSpec: On malformed input
    """
    try:
        if isinstance(data, str):
            return _MEASURE_ADAPTER.validate_json(data)
        return _MEASURE_ADAPTER.validate_python(data)
    except ValidationError as err:
        raise InvalidSpec("Invalid MeasureSpec", details=err.errors(include_url=False)) from err


def dump_measure_spec(spec: MeasureSpec) -> dict[str, Any]:
    """Serialize a MeasureSpec to its JSON object form."""
    return _MEASURE_ADAPTER.dump_python(spec, mode="json")
