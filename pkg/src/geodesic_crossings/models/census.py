"""Census and prediction models."""

from __future__ import annotations

from pydantic import Field, model_validator

from .base import GeoBaseModel
from .enums import CrossingType


class BundlePairCount(GeoBaseModel):
    """Crossings between two bundles (or inside one bundle when first == second)."""

    first: tuple[int, int]
    second: tuple[int, int]
    type: CrossingType
    count: int


class NodeCrossingCount(GeoBaseModel):
    """Measured node crossings between two bundles leaving one node."""

    node: int
    node_label: str
    targets: tuple[int, int]
    angle: float = Field(description="angle between the two bundle directions at the node")
    count: int


class CrossingCensus(GeoBaseModel):
    """Exact crossing counts of a drawing, split by type for blow-ups."""

    total: int
    by_type: dict[str, int] = Field(default_factory=dict)
    bundle_pairs: list[BundlePairCount] = Field(default_factory=list)
    per_node_N: list[NodeCrossingCount] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_total(self) -> CrossingCensus:
        """Typed counts must add up to the total."""
        if self.by_type and sum(self.by_type.values()) != self.total:
            raise ValueError("by_type does not sum to total")
        return self

    def counts_of(self, kind: CrossingType) -> list[int]:
        """Non-zero bundle-pair counts of one crossing type."""
        return [p.count for p in self.bundle_pairs if p.type is kind and p.count]

    def node_pair_total(self, node: int, target: int) -> int:
        """Node crossings at ``node`` between the bundle to ``target`` and both other bundles.

        The other two bundles are the ones to the antipodal pair not containing ``target``;
        this is the measured cro_a + cro_(pi-a).
        """
        partner_pair = {target, target ^ 1}
        return sum(
            c.count
            for c in self.per_node_N
            if c.node == node and target in c.targets and not set(c.targets) <= partner_pair
        )


class TriangleCensus(GeoBaseModel):
    """Exact triangle count of a crossing graph, optionally typed."""

    total: int
    by_type: dict[str, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_total(self) -> TriangleCensus:
        """Typed counts must add up to the total."""
        if self.by_type and sum(self.by_type.values()) != self.total:
            raise ValueError("by_type does not sum to total")
        return self

    @property
    def single_node(self) -> int | None:
        """Triangles whose three edges all leave one node, or None when untyped.

        Three bundles that pairwise share exactly one node all share the same node
        (the node graph is bipartite), so these are exactly the NNN triangles.
        """
        return self.by_type.get("NNN") if self.by_type else None


class NodePrediction(GeoBaseModel):
    """Predicted node crossings at one node."""

    node: int
    node_label: str
    angle: float
    cro_angle: float
    cro_complement: float
    exact_pair_total: int


class CrossingPrediction(GeoBaseModel):
    """Predicted crossing census of D4 blown up to n vertices per node."""

    n: int
    C: int
    B: int
    N: float
    N_exact: int
    per_node: list[NodePrediction] = Field(default_factory=list)

    @property
    def total(self) -> float:
        """Leading-order total."""
        return self.C + self.B + self.N


class TrianglePrediction(GeoBaseModel):
    """Triangle counts by type: leading-order, finite-n, and exact where known."""

    n: int
    CNN: float
    BBB: float
    CCB: float
    BNN: float
    total: float
    BBB_exact: int
    CCB_exact: int
    CNN_finite: float
    BNN_finite: float
    total_finite: float

    @model_validator(mode="after")
    def check_total(self) -> TrianglePrediction:
        """Both totals are the sums of their type predictions."""
        parts = self.CNN + self.BBB + self.CCB + self.BNN
        if abs(parts - self.total) > 1e-9 * max(1.0, abs(self.total)):
            raise ValueError("total does not match type predictions")
        finite = self.CNN_finite + self.BNN_finite + self.BBB_exact + self.CCB_exact
        if abs(finite - self.total_finite) > 1e-9 * max(1.0, abs(self.total_finite)):
            raise ValueError("total_finite does not match finite type predictions")
        return self
