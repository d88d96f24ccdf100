"""Geodesic drawings of complete bipartite graphs.

Three constructions:
- random_bipartite_drawing: parts drawn from two measures, with resampling
- antipodal_drawing: parts P ∪ -P and Q ∪ -Q
- blowup_drawing: every vertex of an antipodal K4,4 replaced by n points on a small circle

Vertex indexing of a blow-up: part A lists the nodes v1, v1_bar, v2, v2_bar, part B the
nodes w1, w1_bar, w2, w2_bar; each node's vertices run counterclockwise from its
rotation offset. Edge (i, j) has id i*nB + j.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .const import (
    BLOWUP_EPS_SCALE,
    GENERAL_POSITION_EPS,
    GOLDEN_ANGLE,
    NODE_COUNT,
    REJECTION_FACTOR,
)
from .exceptions import (
    ConfigurationNotCanonical,
    DomainError,
    GeneralPositionViolation,
    OddSize,
    TooManyRejections,
)
from .geometry import (
    GeodesicSegment,
    UnitVec,
    VecLike,
    as_array,
    circle_points,
    edge_arrays,
    general_position_check,
    require_general_position,
    segments_cross,
    spherical_angle,
    tangent_direction,
)
from .measures import sample_measure, sample_uniform_sphere
from .models.blowup import AngleQuad, BlowupConfig, BlowupMetadata
from .models.drawing import DrawingDocument
from .models.enums import ViolationKind
from .models.measure import MeasureSpec
from .rng import RngLike, as_generator

_LOGGER = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


def _frozen(points: FloatArray) -> FloatArray:
    arr = np.array(points, dtype=np.float64).reshape(-1, 3)
    arr.setflags(write=False)
    return arr


def _triples(points: FloatArray) -> list[tuple[float, float, float]]:
    return [(float(p[0]), float(p[1]), float(p[2])) for p in points]


@dataclass(frozen=True)
class BipartiteDrawing:
    """Geodesic drawing of K_{nA,nB}.

    Attributes:
        part_a: Part A coordinates, read-only array of shape (nA, 3)
        part_b: Part B coordinates, read-only array of shape (nB, 3)
        blowup: Node structure when the drawing is a blow-up
    """

    part_a: FloatArray
    part_b: FloatArray
    blowup: BlowupMetadata | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "part_a", _frozen(self.part_a))
        object.__setattr__(self, "part_b", _frozen(self.part_b))

    @property
    def n_a(self) -> int:
        """Number of part A vertices."""
        return int(self.part_a.shape[0])

    @property
    def n_b(self) -> int:
        """Number of part B vertices."""
        return int(self.part_b.shape[0])

    @property
    def edge_count(self) -> int:
        """nA * nB."""
        return self.n_a * self.n_b

    @property
    def points(self) -> FloatArray:
        """Part A followed by part B, shape (nA + nB, 3)."""
        return np.concatenate([self.part_a, self.part_b])

    def edge_id(self, i: int, j: int) -> int:
        """Id of the edge from part_a[i] to part_b[j]."""
        return i * self.n_b + j

    def edge_endpoints(self, edge: int) -> tuple[int, int]:
        """(i, j) of an edge id."""
        return divmod(edge, self.n_b)

    def segment(self, edge: int) -> GeodesicSegment:
        """Geodesic segment of an edge id."""
        i, j = self.edge_endpoints(edge)
        return GeodesicSegment.between(self.part_a[i], self.part_b[j])

    def edge_arrays(self) -> tuple[FloatArray, FloatArray, FloatArray]:
        """(ea, eb, en) arrays of all edges, indexed by edge id."""
        return edge_arrays(self.part_a, self.part_b)

    def to_document(self, meta: dict[str, object] | None = None) -> DrawingDocument:
        """JSON document form."""
        return DrawingDocument(
            part_a=_triples(self.part_a),
            part_b=_triples(self.part_b),
            blowup=self.blowup,
            meta=meta,
        )

    def to_json(self, meta: dict[str, object] | None = None) -> str:
        """Serialize to drawing JSON (coordinates round-trip exactly)."""
        return self.to_document(meta).model_dump_json(by_alias=True, exclude_none=True, indent=2)

    @classmethod
    def from_document(cls, doc: DrawingDocument) -> BipartiteDrawing:
        """Build from a validated document."""
        return cls(
            part_a=np.asarray(doc.part_a, dtype=np.float64),
            part_b=np.asarray(doc.part_b, dtype=np.float64),
            blowup=doc.blowup,
        )

    @classmethod
    def read(cls, path: str | Path) -> BipartiteDrawing:
        """Load a drawing JSON file.

        Raises:
            InvalidSpec: If the document is malformed
        """
        return cls.from_document(DrawingDocument.from_json_text(Path(path).read_text()))

    def write(self, path: str | Path, meta: dict[str, object] | None = None) -> None:
        """Write drawing JSON to a file."""
        Path(path).write_text(self.to_json(meta) + "\n")


def _fits(existing: FloatArray, p: FloatArray, eps: float) -> bool:
    """p keeps ``existing`` free of coincident, antipodal and collinear triples."""
    if existing.shape[0] == 0:
        return True
    diff = existing - p
    summ = existing + p
    if 0.5 * float(np.min(np.einsum("ij,ij->i", diff, diff))) <= eps:
        return False
    if 0.5 * float(np.min(np.einsum("ij,ij->i", summ, summ))) <= eps:
        return False
    if existing.shape[0] < 2:
        return True
    det = np.abs(np.einsum("k,ijk->ij", p, np.cross(diff[:, None, :], diff[None, :, :])))
    upper = np.triu(np.ones_like(det, dtype=bool), k=1)
    return bool(np.all(det[upper] > eps))


def _violation_vertices(
    kind: ViolationKind, indices: tuple[int, ...], n_a: int, n_b: int
) -> list[int]:
    if kind is not ViolationKind.TRIPLE_CROSSING:
        return list(indices)
    out: list[int] = []
    for e in indices:
        i, j = divmod(e, n_b)
        out.extend((i, n_a + j))
    return out


def random_bipartite_drawing(
    mu1: MeasureSpec,
    mu2: MeasureSpec,
    n: int,
    rng: RngLike,
    *,
    eps: float = GENERAL_POSITION_EPS,
) -> BipartiteDrawing:
    """(mu1, mu2)-random geodesic drawing of K_{n,n}.

    Points are drawn one at a time, part A first; a draw that would break general
    position is redrawn.

    Raises:
        DomainError: If n < 1
        TooManyRejections: After REJECTION_FACTOR * n redraws
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    gen = as_generator(rng)
    budget = REJECTION_FACTOR * n
    rejections = 0
    pts = np.empty((2 * n, 3), dtype=np.float64)

    def draw_into(idx: int, others: FloatArray) -> None:
        nonlocal rejections
        spec = mu1 if idx < n else mu2
        while True:
            p = sample_measure(spec, gen, 1)[0]
            if _fits(others, p, eps):
                pts[idx] = p
                return
            rejections += 1
            _LOGGER.warning("Rejected draw for vertex %d (%d so far)", idx, rejections)
            if rejections > budget:
                raise TooManyRejections(
                    f"Gave up after {rejections} rejected draws", details={"n": n, "eps": eps}
                )

    for idx in range(2 * n):
        draw_into(idx, pts[:idx])

    while (violation := general_position_check(pts, eps, n_a=n)) is not None:
        victim = max(_violation_vertices(violation.kind, violation.indices, n, n))
        rejections += 1
        _LOGGER.warning("Redrawing vertex %d after %s", victim, violation.kind.value)
        if rejections > budget:
            raise TooManyRejections(f"Gave up after {rejections} rejected draws")
        draw_into(victim, np.delete(pts, victim, axis=0))

    _LOGGER.debug("Random drawing n=%d with %d rejections", n, rejections)
    return BipartiteDrawing(part_a=pts[:n], part_b=pts[n:])


def antipodal_drawing(
    P: list[VecLike] | FloatArray,
    Q: list[VecLike] | FloatArray,
    *,
    eps: float = GENERAL_POSITION_EPS,
) -> BipartiteDrawing:
    """Drawing of K_{n,n} with parts P ∪ -P and Q ∪ -Q, n = 2|P|.

    Raises:
        OddSize: If |P| != |Q| or either is empty
        GeneralPositionViolation: If the points are not in general position
    """
    p = np.asarray([as_array(x) for x in P], dtype=np.float64).reshape(-1, 3)
    q = np.asarray([as_array(x) for x in Q], dtype=np.float64).reshape(-1, 3)
    if p.shape[0] != q.shape[0] or p.shape[0] == 0:
        raise OddSize(
            "Antipodal drawing needs |P| = |Q| >= 1", details={"P": p.shape[0], "Q": q.shape[0]}
        )
    h = p.shape[0]
    part_a = np.concatenate([p, -p])
    part_b = np.concatenate([q, -q])
    pairs = [(i, i + h) for i in range(h)] + [(2 * h + i, 3 * h + i) for i in range(h)]
    require_general_position(
        np.concatenate([part_a, part_b]), eps, n_a=2 * h, antipodal_pairs=pairs
    )
    return BipartiteDrawing(part_a=part_a, part_b=part_b)


def random_antipodal_drawing(
    n: int, rng: RngLike, *, eps: float = GENERAL_POSITION_EPS
) -> BipartiteDrawing:
    """Antipodal drawing of K_{n,n} from n/2 + n/2 uniform points.

    Raises:
        OddSize: If n is odd or not positive
        TooManyRejections: After REJECTION_FACTOR * n failed attempts
    """
    if n < 2 or n % 2:
        raise OddSize(f"Antipodal drawings need even n >= 2, got {n}")
    gen = as_generator(rng)
    for attempt in range(REJECTION_FACTOR * n):
        pts = sample_uniform_sphere(gen, n)
        try:
            return antipodal_drawing(pts[: n // 2], pts[n // 2 :], eps=eps)
        except GeneralPositionViolation as err:
            _LOGGER.warning("Attempt %d rejected: %s", attempt, err)
    raise TooManyRejections(f"No antipodal drawing in general position for n={n}")


def golden_offsets() -> list[float]:
    """Node k gets offset k * golden angle."""
    return [k * GOLDEN_ANGLE for k in range(NODE_COUNT)]


def _largest_gap_midpoint(forbidden: list[float], period: float) -> float:
    marks = sorted(x % period for x in forbidden)
    best_gap, best_mid = -1.0, 0.0
    for k, lo in enumerate(marks):
        hi = marks[k + 1] if k + 1 < len(marks) else marks[0] + period
        if hi - lo > best_gap:
            best_gap, best_mid = hi - lo, (lo + hi) / 2
    return best_mid % period


def suitable_rotation_offsets(cfg: BlowupConfig) -> list[float]:
    """Rotation offsets for which bundle and node counts are exact.

    A node's chords have directions offset + π/2 + kπ/n (mod π). The offset of each
    node is the midpoint of the largest gap between the phases (mod π/n) at which a
    chord would be parallel to one of the node's bundle directions. The antipodal node
    gets -offset, shifted by π/n for even n, so no two vertices are antipodal.
    """
    n = cfg.n
    step = math.pi / n
    shift = step if n % 2 == 0 else 0.0
    centers = cfg.centers
    offsets = [0.0] * NODE_COUNT
    for node in range(0, NODE_COUNT, 2):
        targets = range(4, 8) if node < 4 else range(4)
        forbidden: list[float] = []
        for t in targets:
            psi = tangent_direction(centers[node], centers[t])
            forbidden.append(psi - math.pi / 2)
            psi_bar = tangent_direction(centers[node + 1], centers[t])
            forbidden.append(shift - (psi_bar - math.pi / 2))
        off = _largest_gap_midpoint(forbidden, step)
        offsets[node] = off
        offsets[node + 1] = -off + shift
    return offsets


def blowup_tolerance(cfg: BlowupConfig) -> float:
    """General-position tolerance scaled to the node geometry.

    min(GENERAL_POSITION_EPS, BLOWUP_EPS_SCALE * sin(r)² * (π/n)³), so evenly spaced
    vertices on a tiny circle are not mistaken for collinear triples.
    """
    return min(
        GENERAL_POSITION_EPS,
        BLOWUP_EPS_SCALE * math.sin(cfg.r) ** 2 * (math.pi / cfg.n) ** 3,
    )


def blowup_drawing(cfg: BlowupConfig, *, eps: float | None = None) -> BipartiteDrawing:
    """Blow-up D4^(n) of the antipodal K4,4 drawing given by cfg.

    Args:
        cfg: Base configuration, radius, vertices per node and rotation offsets
        eps: General-position tolerance (default blowup_tolerance(cfg))

    Raises:
        GeneralPositionViolation: Perturb cfg.rotation_offsets and retry
    """
    offsets = cfg.rotation_offsets if cfg.rotation_offsets is not None else golden_offsets()
    steps = 2.0 * math.pi * np.arange(cfg.n) / cfg.n
    nodes = [
        circle_points(center, cfg.r, off + steps)
        for center, off in zip(cfg.centers, offsets, strict=True)
    ]
    part_a = np.concatenate(nodes[:4])
    part_b = np.concatenate(nodes[4:])
    tol = blowup_tolerance(cfg) if eps is None else eps
    require_general_position(np.concatenate([part_a, part_b]), tol, n_a=part_a.shape[0])
    meta = BlowupMetadata(
        config=cfg.model_copy(update={"rotation_offsets": list(offsets)}),
        node_of_vertex=[k for k in range(NODE_COUNT) for _ in range(cfg.n)],
    )
    _LOGGER.debug("Blow-up n=%d r=%g eps=%g", cfg.n, cfg.r, tol)
    return BipartiteDrawing(part_a=part_a, part_b=part_b, blowup=meta)


def _has_reference_crossing(cfg: BlowupConfig) -> bool:
    v1, v2, w1, w2 = (UnitVec.from_array(p) for p in (cfg.v1, cfg.v2, cfg.w1, cfg.w2))
    return segments_cross(GeodesicSegment(w2, v1), GeodesicSegment(v2, w1))


def canonicalize(cfg: BlowupConfig) -> BlowupConfig:
    """Relabel cfg so that segments w2v1 and v2w1 cross.

    Tries the 16 antipodal relabelings (identity first), then the same with w1 and w2
    exchanged.

    Raises:
        ConfigurationNotCanonical: If no relabeling has that crossing
    """
    candidates = [cfg, cfg.model_copy(update={"w1": cfg.w2, "w2": cfg.w1})]
    for base in candidates:
        for signs in itertools.product((1, -1), repeat=4):
            relabeled = base.relabeled(signs)
            if _has_reference_crossing(relabeled):
                return relabeled
    raise ConfigurationNotCanonical("No relabeling makes w2v1 cross v2w1")


def base_angles(cfg: BlowupConfig) -> AngleQuad:
    """Angles at w2, v2, v1 and w1 around the crossing of w2v1 and v2w1.

    alpha = ∠(w2; v2, v1), beta = ∠(v2; w2, w1), gamma = ∠(v1; w1, w2),
    delta = ∠(w1; v1, v2), after canonicalize.
    """
    c = canonicalize(cfg)
    v1, v2, w1, w2 = c.v1, c.v2, c.w1, c.w2
    return AngleQuad(
        alpha=spherical_angle(w2, v2, v1),
        beta=spherical_angle(v2, w2, w1),
        gamma=spherical_angle(v1, w1, w2),
        delta=spherical_angle(w1, v1, v2),
    )
