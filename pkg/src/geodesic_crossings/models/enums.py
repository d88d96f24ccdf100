"""Enums for geodesic-crossings."""

from __future__ import annotations

from enum import Enum, IntEnum


class CrossingType(str, Enum):
    """Crossing type inside a blow-up drawing."""

    BUNDLE_BUNDLE = "C"  # two node-disjoint bundles, near an original crossing
    BUNDLE = "B"  # two edges of the same bundle
    NODE = "N"  # two bundles sharing one node


class ViolationKind(str, Enum):
    """General-position violation kind."""

    ANTIPODAL = "Antipodal"
    COINCIDENT = "Coincident"
    COLLINEAR = "Collinear"
    TRIPLE_CROSSING = "TripleCrossing"


class RotationMode(str, Enum):
    """How blow-up node offsets are chosen."""

    GOLDEN = "golden"
    SUITABLE = "suitable"


class Node(IntEnum):
    """Node ids of the antipodal K4,4 base drawing."""

    V1 = 0
    V1_BAR = 1
    V2 = 2
    V2_BAR = 3
    W1 = 4
    W1_BAR = 5
    W2 = 6
    W2_BAR = 7

    @property
    def partner(self) -> Node:
        """Antipodal node."""
        return Node(self.value ^ 1)

    @property
    def is_a_side(self) -> bool:
        """True for v-nodes (part A)."""
        return self.value < 4
