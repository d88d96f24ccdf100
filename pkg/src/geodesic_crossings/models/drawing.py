"""Drawing document and general-position report models."""

from __future__ import annotations

from typing import Any

from pydantic import Field, model_validator

from .base import GeoBaseModel
from .blowup import BlowupMetadata
from .enums import ViolationKind
from .measure import UnitTriple


class Violation(GeoBaseModel):
    """First general-position violation found by a check."""

    kind: ViolationKind
    indices: tuple[int, ...]


class DrawingDocument(GeoBaseModel):
    """JSON form of a BipartiteDrawing.

    Floats are written with Python's shortest round-trip repr, so reading a
    document back reproduces every coordinate bit-for-bit.
    """

    part_a: list[UnitTriple] = Field(alias="partA", min_length=1)
    part_b: list[UnitTriple] = Field(alias="partB", min_length=1)
    blowup: BlowupMetadata | None = None
    meta: dict[str, Any] | None = None

    @model_validator(mode="after")
    def check_blowup_sizes(self) -> DrawingDocument:
        """Blow-up metadata must describe exactly the listed vertices."""
        if self.blowup is not None:
            expected = self.blowup.n_a
            if len(self.part_a) != expected or len(self.part_b) != expected:
                raise ValueError(
                    f"blow-up with n={self.blowup.config.n} needs {expected} vertices per part, "
                    f"got {len(self.part_a)} and {len(self.part_b)}"
                )
        return self
