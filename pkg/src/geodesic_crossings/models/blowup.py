"""Blow-up configuration models."""

from __future__ import annotations

import itertools
import math
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import Field, model_validator

from ..const import DEFAULT_RADIUS_CAP, GENERAL_POSITION_EPS, NODE_COUNT, NODE_LABELS
from .base import GeoBaseModel
from .measure import UnitTriple


def default_radius(n: int) -> float:
    """Circle radius for the r << 1/n regime: min(1e-3, 1/(10n))."""
    return min(DEFAULT_RADIUS_CAP, 1.0 / (10 * n))


class BlowupConfig(GeoBaseModel):
    """Base antipodal K4,4 configuration plus blow-up parameters.

    Attributes:
        v1, v2: base vertices of part A (their antipodes complete the part)
        w1, w2: base vertices of part B
        r: angular radius of each node circle (default min(1e-3, 1/(10n)))
        n: vertices per node
        rotation_offsets: one angle per node in NODE_LABELS order; None selects
            golden-angle offsets
    """

    v1: UnitTriple
    v2: UnitTriple
    w1: UnitTriple
    w2: UnitTriple
    n: int = Field(default=1, ge=1)
    r: float = Field(default=0.0, ge=0.0)
    rotation_offsets: list[float] | None = None

    @model_validator(mode="before")
    @classmethod
    def fill_radius(cls, data: Any) -> Any:
        """Apply the default radius rule when r is missing."""
        if isinstance(data, dict) and data.get("r") is None:
            data = dict(data)
            data["r"] = default_radius(int(data.get("n", 1)))
        return data

    @model_validator(mode="after")
    def check_geometry(self) -> BlowupConfig:
        """Validate base general position and the radius bound."""
        if self.rotation_offsets is not None and len(self.rotation_offsets) != NODE_COUNT:
            raise ValueError(f"rotation_offsets needs {NODE_COUNT} values")
        base = np.array([self.v1, self.v2, self.w1, self.w2], dtype=np.float64)
        names = ("v1", "v2", "w1", "w2")
        for i, j in itertools.combinations(range(4), 2):
            p, q = base[i], base[j]
            gap = min(float(np.dot(p - q, p - q)), float(np.dot(p + q, p + q))) / 2
            if gap <= GENERAL_POSITION_EPS:
                raise ValueError(f"{names[i]} and {names[j]} coincide or are antipodal")
        for i, j, k in itertools.combinations(range(4), 3):
            p = base[i]
            det = float(np.dot(p, np.cross(base[j] - p, base[k] - p)))
            if abs(det) <= GENERAL_POSITION_EPS:
                raise ValueError(f"{names[i]}, {names[j]}, {names[k]} share a great circle")
        if not 0.0 < self.r < self.min_center_separation / 4:
            raise ValueError(
                f"r must be in (0, {self.min_center_separation / 4:.6g}), got {self.r}"
            )
        return self

    @property
    def centers(self) -> NDArray[np.float64]:
        """Node centers, shape (8, 3), in NODE_LABELS order."""
        base = np.array([self.v1, self.v2, self.w1, self.w2], dtype=np.float64)
        v1, v2, w1, w2 = base
        return np.stack([v1, -v1, v2, -v2, w1, -w1, w2, -w2])

    @property
    def min_center_separation(self) -> float:
        """Smallest angular distance between two distinct node centers."""
        c = self.centers
        best = math.pi
        for i, j in itertools.combinations(range(NODE_COUNT), 2):
            cos_ij = float(np.clip(np.dot(c[i], c[j]), -1.0, 1.0))
            best = min(best, math.acos(cos_ij))
        return best

    def relabeled(self, signs: tuple[int, int, int, int]) -> BlowupConfig:
        """Swap v1/v2/w1/w2 with their antipodes where the sign is -1."""
        flipped = [
            tuple(s * x for x in p)
            for s, p in zip(signs, (self.v1, self.v2, self.w1, self.w2), strict=True)
        ]
        return self.model_copy(
            update={"v1": flipped[0], "v2": flipped[1], "w1": flipped[2], "w2": flipped[3]}
        )


class BlowupMetadata(GeoBaseModel):
    """Node structure of a blow-up drawing."""

    config: BlowupConfig
    node_of_vertex: list[int]

    @model_validator(mode="after")
    def check_nodes(self) -> BlowupMetadata:
        """Part A holds the v-nodes 0..3, part B the w-nodes 4..7, n vertices each."""
        n = self.config.n
        nodes = self.node_of_vertex
        if len(nodes) != NODE_COUNT * n:
            raise ValueError(f"node_of_vertex needs {NODE_COUNT * n} entries, got {len(nodes)}")
        if any(not 0 <= k < 4 for k in nodes[: 4 * n]):
            raise ValueError("part A vertices must belong to nodes 0..3")
        if any(not 4 <= k < NODE_COUNT for k in nodes[4 * n :]):
            raise ValueError(f"part B vertices must belong to nodes 4..{NODE_COUNT - 1}")
        sizes = np.bincount(np.asarray(nodes, dtype=np.int64), minlength=NODE_COUNT)
        if np.any(sizes != n):
            raise ValueError(f"every node needs {n} vertices, got {sizes.tolist()}")
        return self

    @property
    def n_a(self) -> int:
        """Size of part A (vertices of the four v-nodes)."""
        return 4 * self.config.n

    def node_arrays(self) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
        """Node id of the partA and partB endpoint of every drawing edge id."""
        nodes = np.asarray(self.node_of_vertex, dtype=np.int64)
        part_a, part_b = nodes[: self.n_a], nodes[self.n_a :]
        return np.repeat(part_a, part_b.size), np.tile(part_b, part_a.size)

    def bundle_of_edge(self, edge: int) -> tuple[int, int]:
        """Unordered node-id pair (v-node, w-node) of a drawing edge."""
        n_b = len(self.node_of_vertex) - self.n_a
        i, j = divmod(edge, n_b)
        return self.node_of_vertex[i], self.node_of_vertex[self.n_a + j]

    @staticmethod
    def label(node: int) -> str:
        """Human-readable node name."""
        return NODE_LABELS[node]


class AngleQuad(GeoBaseModel):
    """Angles of the reference crossing pattern.

    alpha at w2, beta at v2, gamma at v1, delta at w1.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        """(alpha, beta, gamma, delta)."""
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def total(self) -> float:
        """alpha + beta + gamma + delta."""
        return self.alpha + self.beta + self.gamma + self.delta
