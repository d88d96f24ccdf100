"""Spherical primitives: unit vectors, geodesic arcs and the crossing predicate.

Coordinates are plain float64; every predicate is a pure function of its inputs.

Example:
    >>> a, b = UnitVec(1, 0, 0), UnitVec(0, 1, 0)
    >>> s1 = GeodesicSegment(a, b)
    >>> s2 = GeodesicSegment.between((0.5, 0.5, 0.5**0.5), (0.5, 0.5, -(0.5**0.5)))
    >>> segments_cross(s1, s2)
    True
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .const import (
    ANTIPODAL_ENDPOINT_EPS,
    DEGENERATE_EPS,
    GENERAL_POSITION_EPS,
    NORM_EPS,
    PLANE_EPS,
    SIGN_EPS,
)
from .exceptions import (
    DegenerateConfiguration,
    DegenerateSegment,
    DomainError,
    GeneralPositionViolation,
)
from .kernels import CROSS, DEGENERATE, pair_codes_kernel, triple_crossing_kernel
from .models.drawing import Violation
from .models.enums import ViolationKind

_LOGGER = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class UnitVec:
    """Point on the unit sphere.

    Raises:
        DomainError: If |(x, y, z)|² differs from 1 by more than NORM_EPS
    """

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm2 - 1.0) > NORM_EPS:
            raise DomainError("Not a unit vector", details={"norm2": norm2})

    @classmethod
    def from_array(cls, v: ArrayLike) -> UnitVec:
        """Build from any length-3 sequence."""
        x, y, z = (float(c) for c in np.asarray(v, dtype=np.float64).reshape(3))
        return cls(x, y, z)

    @classmethod
    def normalized(cls, v: ArrayLike) -> UnitVec:
        """Scale a nonzero vector onto the sphere."""
        return cls.from_array(normalize(v))

    @property
    def array(self) -> FloatArray:
        """Coordinates as a float64 array of shape (3,)."""
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    def as_tuple(self) -> tuple[float, float, float]:
        """(x, y, z)."""
        return (self.x, self.y, self.z)

    def __neg__(self) -> UnitVec:
        return UnitVec(-self.x, -self.y, -self.z)


VecLike = UnitVec | ArrayLike


def as_array(v: VecLike) -> FloatArray:
    """float64 coordinates of a UnitVec or array-like."""
    if isinstance(v, UnitVec):
        return v.array
    return np.asarray(v, dtype=np.float64)


def normalize(v: ArrayLike) -> FloatArray:
    """Scale a vector (or each row of an (N, 3) array) to unit length."""
    arr = np.asarray(v, dtype=np.float64)
    norm = np.linalg.norm(arr, axis=-1, keepdims=True)
    if np.any(norm == 0.0):
        raise DomainError("Cannot normalize the zero vector")
    return arr / norm


def antipode(p: UnitVec) -> UnitVec:
    """Return -p."""
    return -p


@dataclass(frozen=True)
class GeodesicSegment:
    """Minor great-circle arc from ``a`` to ``b``.

    Raises:
        DegenerateSegment: If a and b coincide or are antipodal
    """

    a: UnitVec
    b: UnitVec

    def __post_init__(self) -> None:
        great_circle_normal(self.a, self.b)

    @classmethod
    def between(cls, a: ArrayLike, b: ArrayLike) -> GeodesicSegment:
        """Segment between two coordinate triples."""
        return cls(UnitVec.from_array(a), UnitVec.from_array(b))

    @property
    def normal(self) -> FloatArray:
        """Unnormalized normal a×b of the supporting great circle."""
        return np.cross(self.a.array, self.b.array)

    @property
    def length(self) -> float:
        """Arc length in radians."""
        return angular_distance(self.a, self.b)

    def reversed(self) -> GeodesicSegment:
        """Same arc traversed from b to a."""
        return GeodesicSegment(self.b, self.a)

    def antipodal(self) -> GeodesicSegment:
        """Pointwise antipodal arc."""
        return GeodesicSegment(-self.a, -self.b)


def great_circle_normal(a: VecLike, b: VecLike) -> FloatArray:
    """Cross product a×b, the normal of the great circle through a and b.

    Raises:
        DegenerateSegment: If |a×b| < DEGENERATE_EPS
    """
    n = np.cross(as_array(a), as_array(b))
    if float(np.linalg.norm(n)) < DEGENERATE_EPS:
        raise DegenerateSegment(
            "Endpoints coincide or are antipodal", details={"normal": n.tolist()}
        )
    return n


def point_on_arc(p: VecLike, s: GeodesicSegment) -> bool:
    """True iff p lies on the closed minor arc of s.

    Points farther than PLANE_EPS from the supporting plane are never on the arc.
    """
    pa = as_array(p)
    a, b = s.a.array, s.b.array
    n = np.cross(a, b)
    if abs(float(np.dot(pa, n))) > PLANE_EPS * float(np.linalg.norm(n)):
        return False
    return float(np.dot(np.cross(a, pa), n)) >= 0.0 and float(np.dot(np.cross(pa, b), n)) >= 0.0


def _shares_endpoint(s1: GeodesicSegment, s2: GeodesicSegment) -> bool:
    return bool({s1.a, s1.b} & {s2.a, s2.b})


def _near_antipodal(p: FloatArray, q: FloatArray) -> bool:
    return 0.5 * float(np.dot(p + q, p + q)) <= ANTIPODAL_ENDPOINT_EPS


def segments_cross(s1: GeodesicSegment, s2: GeodesicSegment) -> bool:
    """True iff the open arcs of s1 and s2 meet in exactly one interior point.

    Segments sharing an endpoint, or with antipodal endpoints, do not cross.

    Raises:
        DegenerateConfiguration: If a sign test falls within SIGN_EPS of zero
    """
    if _shares_endpoint(s1, s2):
        return False
    a1, b1, a2, b2 = s1.a.array, s1.b.array, s2.a.array, s2.b.array
    if any(_near_antipodal(p, q) for p in (a1, b1) for q in (a2, b2)):
        return False

    n1, n2 = np.cross(a1, b1), np.cross(a2, b2)
    signs = (
        float(np.dot(n1, a2)),
        float(np.dot(n1, b2)),
        float(np.dot(n2, a1)),
        float(np.dot(n2, b1)),
    )
    if min(abs(v) for v in signs) < SIGN_EPS:
        raise DegenerateConfiguration("Tangent arcs or shared great circle", details=signs)
    if signs[0] * signs[1] > 0 or signs[2] * signs[3] > 0:
        return False

    p = normalize(np.cross(n1, n2))
    return (point_on_arc(p, s1) and point_on_arc(p, s2)) or (
        point_on_arc(-p, s1) and point_on_arc(-p, s2)
    )


def crossing_point(s1: GeodesicSegment, s2: GeodesicSegment) -> UnitVec | None:
    """Interior intersection point of two crossing arcs, or None."""
    if not segments_cross(s1, s2):
        return None
    p = normalize(np.cross(s1.normal, s2.normal))
    if not point_on_arc(p, s1):
        p = -p
    return UnitVec.from_array(p)


def pair_codes(
    a1: ArrayLike, b1: ArrayLike, a2: ArrayLike, b2: ArrayLike, eps: float = SIGN_EPS
) -> NDArray[np.int8]:
    """Row-wise predicate codes (1 cross, 0 no cross, -1 degenerate) for (K, 3) arrays."""
    p1, q1 = np.asarray(a1, dtype=np.float64), np.asarray(b1, dtype=np.float64)
    p2, q2 = np.asarray(a2, dtype=np.float64), np.asarray(b2, dtype=np.float64)
    k = p1.shape[0]
    ea = np.ascontiguousarray(np.concatenate([p1, p2]))
    eb = np.ascontiguousarray(np.concatenate([q1, q2]))
    en = np.cross(ea, eb)
    first = np.arange(k, dtype=np.int64)
    codes: NDArray[np.int8] = pair_codes_kernel(ea, eb, en, first, first + k, eps)

    shared = (
        np.all(p1 == p2, axis=1)
        | np.all(p1 == q2, axis=1)
        | np.all(q1 == p2, axis=1)
        | np.all(q1 == q2, axis=1)
    )
    codes[shared] = 0
    return codes


def segments_cross_batch(
    a1: ArrayLike, b1: ArrayLike, a2: ArrayLike, b2: ArrayLike
) -> NDArray[np.bool_]:
    """Vectorized segments_cross over rows of four (K, 3) endpoint arrays.

    Raises:
        DegenerateConfiguration: If any row is degenerate (indices lists the rows)
    """
    codes = pair_codes(a1, b1, a2, b2)
    bad = np.flatnonzero(codes == DEGENERATE)
    if bad.size:
        raise DegenerateConfiguration(
            "Tangent arcs or shared great circle", indices=tuple(int(i) for i in bad[:10])
        )
    return codes == CROSS


def _tangent(v: FloatArray, u: FloatArray) -> FloatArray:
    t = u - np.dot(u, v) * v
    if float(np.linalg.norm(t)) < DEGENERATE_EPS:
        raise DegenerateSegment("Direction is (anti)parallel to the base point")
    return t


def spherical_angle(v: VecLike, u: VecLike, w: VecLike) -> float:
    """Angle at v between the geodesics v→u and v→w, in [0, π].

    Raises:
        DegenerateSegment: If u or w is (anti)parallel to v
    """
    va = as_array(v)
    tu = _tangent(va, as_array(u))
    tw = _tangent(va, as_array(w))
    return math.atan2(float(np.linalg.norm(np.cross(tu, tw))), float(np.dot(tu, tw)))


def angular_distance(p: VecLike, q: VecLike) -> float:
    """Great-circle distance in radians."""
    pa, qa = as_array(p), as_array(q)
    return math.atan2(float(np.linalg.norm(np.cross(pa, qa))), float(np.dot(pa, qa)))


def tangent_frame(c: VecLike) -> tuple[FloatArray, FloatArray]:
    """Orthonormal basis (e1, e2) of the tangent plane at c, with e1 × e2 = c.

    e1 is the projection of the coordinate axis least aligned with c, so the frame
    of -c is (e1, -e2).
    """
    ca = as_array(c)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(ca)))] = 1.0
    e1 = normalize(axis - np.dot(axis, ca) * ca)
    e2 = np.cross(ca, e1)
    return e1, e2


def circle_points(c: VecLike, r: float, angles: ArrayLike) -> FloatArray:
    """Points at angular radius r about c, at the given angles in c's tangent frame."""
    ca = as_array(c)
    e1, e2 = tangent_frame(ca)
    th = np.asarray(angles, dtype=np.float64)[:, None]
    pts = math.cos(r) * ca + math.sin(r) * (np.cos(th) * e1 + np.sin(th) * e2)
    return normalize(pts)


def tangent_direction(c: VecLike, target: VecLike) -> float:
    """Angle, in c's tangent frame, of the geodesic leaving c toward target."""
    ca = as_array(c)
    t = _tangent(ca, as_array(target))
    e1, e2 = tangent_frame(ca)
    return math.atan2(float(np.dot(t, e2)), float(np.dot(t, e1)))


def rotation_matrix(axis: ArrayLike, angle: float) -> FloatArray:
    """Rotation by ``angle`` about ``axis`` (Rodrigues' formula)."""
    k = normalize(axis)
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(angle) * kx + (1.0 - math.cos(angle)) * (kx @ kx)


def edge_arrays(
    part_a: ArrayLike, part_b: ArrayLike
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Per-edge endpoint and normal arrays for the complete bipartite edge set.

    Edge id i*nB + j joins part_a[i] to part_b[j].

    Returns:
        (ea, eb, en), each C-contiguous of shape (nA*nB, 3)
    """
    pa = np.asarray(part_a, dtype=np.float64)
    pb = np.asarray(part_b, dtype=np.float64)
    ea = np.ascontiguousarray(np.repeat(pa, pb.shape[0], axis=0))
    eb = np.ascontiguousarray(np.tile(pb, (pa.shape[0], 1)))
    en = np.ascontiguousarray(np.cross(ea, eb))
    return ea, eb, en


def _pair_violation(
    pts: FloatArray, eps: float, partner: NDArray[np.int64]
) -> Violation | None:
    diff = pts[:, None, :] - pts[None, :, :]
    summ = pts[:, None, :] + pts[None, :, :]
    coincident = 0.5 * np.einsum("ijk,ijk->ij", diff, diff) <= eps
    antipodal = 0.5 * np.einsum("ijk,ijk->ij", summ, summ) <= eps
    paired = np.flatnonzero(partner >= 0)
    antipodal[paired, partner[paired]] = False
    upper = np.triu(np.ones_like(coincident), k=1)
    bad = np.argwhere((coincident | antipodal) & upper)
    if bad.size == 0:
        return None
    i, j = (int(x) for x in bad[0])
    kind = ViolationKind.COINCIDENT if coincident[i, j] else ViolationKind.ANTIPODAL
    return Violation(kind=kind, indices=(i, j))


def _collinear_violation(
    pts: FloatArray, eps: float, partner: NDArray[np.int64]
) -> Violation | None:
    m = pts.shape[0]
    for i in range(m - 2):
        p = pts[i]
        rest = pts[i + 1 :] - p
        det = np.abs(np.einsum("k,ijk->ij", p, np.cross(rest[:, None, :], rest[None, :, :])))
        valid = np.triu(np.ones_like(det, dtype=bool), k=1)
        if partner[i] > i:
            valid[partner[i] - i - 1, :] = False
            valid[:, partner[i] - i - 1] = False
        own = partner[i + 1 :] - i - 1
        rows = np.flatnonzero(own >= 0)
        valid[rows, own[rows]] = False
        bad = np.argwhere((det <= eps) & valid)
        if bad.size:
            j, k = (int(x) + i + 1 for x in bad[0])
            return Violation(kind=ViolationKind.COLLINEAR, indices=(i, j, k))
    return None


def _triple_crossing_violation(pts: FloatArray, n_a: int, eps: float) -> Violation | None:
    ea, eb, en = edge_arrays(pts[:n_a], pts[n_a:])
    hits = triple_crossing_kernel(ea, eb, en, pts.shape[0] - n_a, SIGN_EPS, eps)
    found = np.flatnonzero(hits[:, 0] >= 0)
    if found.size == 0:
        return None
    e = int(found[0])
    f, g = (int(x) for x in hits[e])
    return Violation(kind=ViolationKind.TRIPLE_CROSSING, indices=tuple(sorted((e, f, g))))


def general_position_check(
    points: Sequence[VecLike] | FloatArray,
    eps: float = GENERAL_POSITION_EPS,
    *,
    n_a: int | None = None,
    antipodal_pairs: Iterable[tuple[int, int]] | None = None,
) -> Violation | None:
    """Find the first general-position violation of a point set.

    Checks, in order: coincident or antipodal pairs, three points on a great circle,
    and (when ``n_a`` splits the points into the two parts of a drawing) three edges
    through one point. The last check costs as much as counting crossings.

    Args:
        points: Point coordinates
        eps: Tolerance of all three tests
        n_a: Size of part A when points are partA followed by partB
        antipodal_pairs: Index pairs allowed to be antipodal; triples containing such
            a pair are not tested for collinearity

    Returns:
        None when the points are in general position, else the first Violation
    """
    pts = np.asarray([as_array(p) for p in points], dtype=np.float64).reshape(-1, 3)
    if pts.shape[0] < 2:
        raise DomainError("general_position_check needs at least 2 points")
    partner = np.full(pts.shape[0], -1, dtype=np.int64)
    for i, j in antipodal_pairs or ():
        partner[i], partner[j] = j, i

    violation = _pair_violation(pts, eps, partner) or _collinear_violation(pts, eps, partner)
    if violation is None and n_a is not None and 0 < n_a < pts.shape[0]:
        violation = _triple_crossing_violation(pts, n_a, eps)
    if violation is not None:
        _LOGGER.debug("Not in general position: %s at %s", violation.kind.value, violation.indices)
    return violation


def require_general_position(
    points: Sequence[VecLike] | FloatArray,
    eps: float = GENERAL_POSITION_EPS,
    *,
    n_a: int | None = None,
    antipodal_pairs: Iterable[tuple[int, int]] | None = None,
) -> None:
    """Raise GeneralPositionViolation if general_position_check finds a violation."""
    violation = general_position_check(points, eps, n_a=n_a, antipodal_pairs=antipodal_pairs)
    if violation is not None:
        raise GeneralPositionViolation(
            f"{violation.kind.value} violation", kind=violation.kind, indices=violation.indices
        )

