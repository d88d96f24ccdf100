"""Pattern graphs and density estimate models."""

from __future__ import annotations

import math

from pydantic import Field, field_validator, model_validator

from ..const import MAX_PATTERN_VERTICES
from ..exceptions import UnsupportedPattern
from .base import GeoBaseModel

_NAMED_PATTERNS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "k1": (1, []),
    "k2": (2, [(0, 1)]),
    "p3": (3, [(0, 1), (1, 2)]),
    "k3": (3, [(0, 1), (0, 2), (1, 2)]),
    "c4": (4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
}


class PatternGraph(GeoBaseModel):
    """Simple loopless pattern graph H on vertices 0..k-1."""

    k: int = Field(ge=1, le=MAX_PATTERN_VERTICES)
    edges: list[tuple[int, int]] = Field(default_factory=list)

    @field_validator("edges")
    @classmethod
    def normalize_edges(cls, v: list[tuple[int, int]]) -> list[tuple[int, int]]:
        """Store each edge as (low, high); reject loops and duplicates."""
        seen: set[tuple[int, int]] = set()
        for a, b in v:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            seen.add((min(a, b), max(a, b)))
        if len(seen) != len(v):
            raise ValueError("duplicate edge")
        return sorted(seen)

    @model_validator(mode="after")
    def check_range(self) -> PatternGraph:
        """Edge endpoints must be vertices."""
        for a, b in self.edges:
            if not (0 <= a < self.k and 0 <= b < self.k):
                raise ValueError(f"edge ({a}, {b}) outside 0..{self.k - 1}")
        return self

    @classmethod
    def named(cls, name: str) -> PatternGraph:
        """Build one of k1, k2, p3, k3, c4, k4.

        Raises:
            UnsupportedPattern: For unknown names
        """
        try:
            k, edges = _NAMED_PATTERNS[name.lower()]
        except KeyError:
            raise UnsupportedPattern(
                f"Unknown pattern {name!r}", details=sorted(_NAMED_PATTERNS)
            ) from None
        return cls(k=k, edges=edges)

    @classmethod
    def empty(cls, k: int) -> PatternGraph:
        """Edgeless pattern on k vertices."""
        return cls(k=k, edges=[])


class DensityEstimate(GeoBaseModel):
    """Bernoulli hit-fraction estimate."""

    value: float = Field(ge=0.0, le=1.0)
    std_error: float = Field(ge=0.0)
    samples: int = Field(ge=1)
    hits: int = Field(ge=0)
    seed: int
    stream_id: int

    @classmethod
    def from_hits(cls, hits: int, samples: int, *, seed: int, stream_id: int) -> DensityEstimate:
        """Estimate with std_error = sqrt(p(1-p)/samples)."""
        value = hits / samples
        return cls(
            value=value,
            std_error=math.sqrt(value * (1.0 - value) / samples),
            samples=samples,
            hits=hits,
            seed=seed,
            stream_id=stream_id,
        )

    def interval(self, z: float) -> tuple[float, float]:
        """value ± z·std_error."""
        return (self.value - z * self.std_error, self.value + z * self.std_error)

    def agrees_with(self, target: float, z: float, *, rel_slack: float = 0.0) -> bool:
        """|value - target| <= z·std_error + rel_slack·|target|."""
        return abs(self.value - target) <= z * self.std_error + rel_slack * abs(target)


class ConvergenceRow(GeoBaseModel):
    """Spread of t(H, X_n) across repeated random drawings of one size."""

    n: int
    reps: int
    mean: float
    spread: float | None = Field(description="sample standard deviation; None when reps == 1")
    values: list[float]


class SweepRow(GeoBaseModel):
    """One step of an angle sweep."""

    t: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    value: float
    angle_sum_ok: bool
