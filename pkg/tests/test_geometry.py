"""Tests for spherical primitives and the crossing predicate."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from geodesic_crossings.exceptions import (
    DegenerateConfiguration,
    DegenerateSegment,
    DomainError,
    GeneralPositionViolation,
    GeometryError,
)
from geodesic_crossings.geometry import (
    GeodesicSegment,
    UnitVec,
    angular_distance,
    crossing_point,
    general_position_check,
    point_on_arc,
    require_general_position,
    rotation_matrix,
    segments_cross,
    segments_cross_batch,
    spherical_angle,
    tangent_frame,
)
from geodesic_crossings.models.enums import ViolationKind

H = math.sqrt(0.5)


def lonlat(lon: float, lat: float) -> np.ndarray:
    return np.array([math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat)])


def random_points(rng: np.random.Generator, size: int) -> np.ndarray:
    pts = rng.normal(size=(size, 3))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def arc_samples(a: np.ndarray, b: np.ndarray, count: int) -> np.ndarray:
    """count points evenly spaced along the minor arc from a to b, endpoints included."""
    theta = angular_distance(a, b)
    t = np.linspace(0.0, 1.0, count)[:, None]
    return (np.sin((1.0 - t) * theta) * a + np.sin(t * theta) * b) / math.sin(theta)


def sampled_cross(a1, b1, a2, b2, count: int = 10_000) -> tuple[bool, float]:
    """Crossing read off dense samples of both arcs; returns (answer, margin).

    Each arc meets the other arc's great circle where its samples change side. The arcs
    cross when those two sample points are the same intersection point rather than
    antipodal ones. The margin is the smallest endpoint distance to the other circle.
    """
    n1, n2 = np.cross(a1, b1), np.cross(a2, b2)
    n1, n2 = n1 / np.linalg.norm(n1), n2 / np.linalg.norm(n2)
    arc1, arc2 = arc_samples(a1, b1, count), arc_samples(a2, b2, count)
    side1, side2 = arc1 @ n2, arc2 @ n1
    margin = float(min(abs(side1[0]), abs(side1[-1]), abs(side2[0]), abs(side2[-1])))
    flip1 = np.flatnonzero(np.signbit(side1[:-1]) != np.signbit(side1[1:]))
    flip2 = np.flatnonzero(np.signbit(side2[:-1]) != np.signbit(side2[1:]))
    if flip1.size == 0 or flip2.size == 0:
        return False, margin
    return bool(np.dot(arc1[flip1[0]], arc2[flip2[0]]) > 0.0), margin


unit_points = st.tuples(
    st.floats(-math.pi, math.pi, allow_nan=False),
    st.floats(-1.0, 1.0, allow_nan=False),
).map(lambda t: lonlat(t[0], math.asin(t[1])))


class TestUnitVec:
    """Test UnitVec construction."""

    def test_rejects_non_unit(self) -> None:
        """Norm must be 1 within NORM_EPS."""
        with pytest.raises(DomainError, match="Not a unit vector"):
            UnitVec(1.0, 1.0, 0.0)

    def test_normalized(self) -> None:
        """normalized scales any nonzero vector onto the sphere."""
        v = UnitVec.normalized([3.0, 0.0, 4.0])
        assert v.as_tuple() == pytest.approx((0.6, 0.0, 0.8))

    def test_negation(self) -> None:
        """-v is the antipode."""
        assert (-UnitVec(0.0, 0.0, 1.0)).z == -1.0


class TestGeodesicSegment:
    """Test segment construction and accessors."""

    def test_coincident_endpoints(self) -> None:
        """Zero-length segments are degenerate."""
        with pytest.raises(DegenerateSegment):
            GeodesicSegment.between((1, 0, 0), (1, 0, 0))

    def test_antipodal_endpoints(self) -> None:
        """Antipodal endpoints have no unique minor arc."""
        with pytest.raises(DegenerateSegment):
            GeodesicSegment.between((0, 0, 1), (0, 0, -1))

    def test_length(self) -> None:
        """A quarter of the equator has length π/2."""
        s = GeodesicSegment.between((1, 0, 0), (0, 1, 0))
        assert s.length == pytest.approx(math.pi / 2)

    def test_point_on_arc(self) -> None:
        """Midpoint is on the arc; a point past the end is not."""
        s = GeodesicSegment.between((1, 0, 0), (0, 1, 0))
        assert point_on_arc((H, H, 0.0), s)
        assert not point_on_arc((-H, H, 0.0), s)
        assert not point_on_arc((H, 0.0, H), s)


class TestSegmentsCross:
    """Test the crossing predicate."""

    def test_meridian_crosses_equator_arc(self) -> None:
        """A meridian arc through the arc's midpoint crosses it."""
        s1 = GeodesicSegment.between((1, 0, 0), (0, 1, 0))
        s2 = GeodesicSegment.between((0.5, 0.5, H), (0.5, 0.5, -H))
        assert segments_cross(s1, s2)
        p = crossing_point(s1, s2)
        assert p is not None
        assert p.as_tuple() == pytest.approx((H, H, 0.0))

    def test_meridian_misses_equator_arc(self) -> None:
        """A meridian outside the arc's longitude range does not cross it."""
        s1 = GeodesicSegment.between((1, 0, 0), (0, 1, 0))
        s2 = GeodesicSegment.between((-0.5, 0.5, H), (-0.5, 0.5, -H))
        assert not segments_cross(s1, s2)
        assert crossing_point(s1, s2) is None

    def test_shared_endpoint(self) -> None:
        """Arcs sharing an endpoint never cross."""
        s1 = GeodesicSegment.between((1, 0, 0), (0, 1, 0))
        s2 = GeodesicSegment.between((1, 0, 0), (0, H, H))
        assert not segments_cross(s1, s2)

    def test_antipodal_endpoints_never_cross(self) -> None:
        """Arcs with antipodal endpoints meet only on the endpoint great circle."""
        s1 = GeodesicSegment.between(lonlat(0.0, 0.2), lonlat(1.5, -0.1))
        s2 = GeodesicSegment.between(lonlat(math.pi, -0.2), lonlat(0.7, 0.4))
        assert not segments_cross(s1, s2)

    def test_shared_great_circle(self) -> None:
        """Overlapping arcs of one great circle are degenerate."""
        s1 = GeodesicSegment.between(lonlat(0.0, 0.0), lonlat(1.0, 0.0))
        s2 = GeodesicSegment.between(lonlat(0.5, 0.0), lonlat(1.5, 0.0))
        with pytest.raises(DegenerateConfiguration):
            segments_cross(s1, s2)

    @settings(max_examples=300, deadline=None)
    @given(unit_points, unit_points, unit_points, unit_points)
    def test_symmetries(self, a1, b1, a2, b2) -> None:
        """Order, orientation and the antipodal map do not change the answer."""
        try:
            s1 = GeodesicSegment.between(a1, b1)
            s2 = GeodesicSegment.between(a2, b2)
            answer = segments_cross(s1, s2)
        except GeometryError:
            assume(False)
            return
        assert segments_cross(s2, s1) == answer
        assert segments_cross(s1.reversed(), s2) == answer
        assert segments_cross(s1, s2.reversed()) == answer
        assert segments_cross(s1.antipodal(), s2.antipodal()) == answer

    def test_matches_sampling_oracle(self) -> None:
        """Predicate agrees with dense arc sampling away from its tolerance."""
        rng = np.random.default_rng(12345)
        pts = random_points(rng, 4 * 10_000).reshape(10_000, 4, 3)
        got = segments_cross_batch(pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3])
        checked = 0
        for k, (a1, b1, a2, b2) in enumerate(pts):
            expected, margin = sampled_cross(a1, b1, a2, b2)
            if margin < 1e-6:
                continue
            assert bool(got[k]) == expected, k
            checked += 1
        assert checked > 9900

    def test_rotation_invariance(self) -> None:
        """Rotating all four endpoints leaves the answer unchanged."""
        rng = np.random.default_rng(7)
        rot = rotation_matrix([0.3, -1.0, 0.5], 1.234)
        pts = random_points(rng, 4 * 500).reshape(500, 4, 3)
        for a1, b1, a2, b2 in pts:
            before = segments_cross(
                GeodesicSegment.between(a1, b1), GeodesicSegment.between(a2, b2)
            )
            ra1, rb1, ra2, rb2 = (rot @ p for p in (a1, b1, a2, b2))
            after = segments_cross(
                GeodesicSegment.between(ra1, rb1), GeodesicSegment.between(ra2, rb2)
            )
            assert before == after

    def test_batch_matches_scalar(self) -> None:
        """segments_cross_batch agrees row by row with segments_cross."""
        rng = np.random.default_rng(99)
        a1, b1, a2, b2 = (random_points(rng, 300) for _ in range(4))
        batch = segments_cross_batch(a1, b1, a2, b2)
        scalar = [
            segments_cross(
                GeodesicSegment.between(a1[k], b1[k]), GeodesicSegment.between(a2[k], b2[k])
            )
            for k in range(300)
        ]
        assert batch.tolist() == scalar

    def test_batch_reports_degenerate_rows(self) -> None:
        """Degenerate rows raise with their indices."""
        a1 = np.array([lonlat(0.0, 0.0), lonlat(0.0, 0.3)])
        b1 = np.array([lonlat(1.0, 0.0), lonlat(1.0, 0.5)])
        a2 = np.array([lonlat(0.5, 0.0), lonlat(0.4, -0.5)])
        b2 = np.array([lonlat(1.5, 0.0), lonlat(0.6, 0.9)])
        with pytest.raises(DegenerateConfiguration) as err:
            segments_cross_batch(a1, b1, a2, b2)
        assert err.value.indices == (0,)


class TestAngles:
    """Test angle helpers."""

    def test_right_angle_at_pole(self) -> None:
        """Meridians at longitudes 0 and π/2 meet at the pole at π/2."""
        assert spherical_angle((0, 0, 1), (1, 0, 0), (0, 1, 0)) == pytest.approx(math.pi / 2)

    def test_straight_angle(self) -> None:
        """Opposite directions give π."""
        assert spherical_angle((0, 0, 1), (1, 0, 0), (-1, 0, 0)) == pytest.approx(math.pi)

    def test_angle_to_self_direction(self) -> None:
        """Angle at v toward one point is 0."""
        assert spherical_angle((0, 0, 1), (1, 0, 0), (1, 0, 0)) == pytest.approx(0.0)

    def test_direction_along_base_point(self) -> None:
        """Direction toward v itself is undefined."""
        with pytest.raises(DegenerateSegment):
            spherical_angle((0, 0, 1), (0, 0, 1), (1, 0, 0))

    @settings(max_examples=200, deadline=None)
    @given(unit_points, unit_points, unit_points)
    def test_angle_symmetric_and_rotation_invariant(self, v, u, w) -> None:
        """Swapping u and w or rotating all three points keeps the angle."""
        for p in (u, w):
            assume(1e-3 < angular_distance(v, p) < math.pi - 1e-3)
        angle = spherical_angle(v, u, w)
        assert spherical_angle(v, w, u) == pytest.approx(angle, abs=1e-12)
        rot = rotation_matrix([0.3, -1.0, 0.5], 1.234)
        assert spherical_angle(rot @ v, rot @ u, rot @ w) == pytest.approx(angle, abs=1e-9)

    def test_tangent_frame_orientation(self) -> None:
        """e1, e2 are orthonormal, tangent at c, and e1 × e2 = c."""
        c = lonlat(0.4, 0.9)
        e1, e2 = tangent_frame(c)
        assert float(np.dot(e1, c)) == pytest.approx(0.0, abs=1e-15)
        assert float(np.dot(e1, e2)) == pytest.approx(0.0, abs=1e-15)
        assert np.cross(e1, e2) == pytest.approx(c)


class TestGeneralPosition:
    """Test general_position_check."""

    def test_random_points_pass(self) -> None:
        """Random points are in general position."""
        pts = random_points(np.random.default_rng(3), 30)
        assert general_position_check(pts) is None

    def test_coincident(self) -> None:
        """Identical points are reported as Coincident."""
        pts = [lonlat(0.0, 0.1), lonlat(1.0, 0.2), lonlat(0.0, 0.1)]
        violation = general_position_check(pts)
        assert violation is not None
        assert violation.kind is ViolationKind.COINCIDENT
        assert violation.indices == (0, 2)

    def test_antipodal(self) -> None:
        """Antipodal points are reported as Antipodal."""
        pts = [lonlat(0.0, 0.1), lonlat(1.0, 0.2), -lonlat(0.0, 0.1)]
        violation = general_position_check(pts)
        assert violation is not None
        assert violation.kind is ViolationKind.ANTIPODAL

    def test_allowed_antipodal_pair(self) -> None:
        """Declared antipodal pairs are neither Antipodal nor part of a collinear triple."""
        p = lonlat(0.3, 0.4)
        pts = [p, -p, lonlat(2.0, -0.7)]
        assert general_position_check(pts, antipodal_pairs=[(0, 1)]) is None

    def test_collinear(self) -> None:
        """Three points on the equator are reported as Collinear."""
        pts = [lonlat(0.0, 0.0), lonlat(1.0, 0.0), lonlat(0.3, 0.5), lonlat(2.0, 0.0)]
        violation = general_position_check(pts)
        assert violation is not None
        assert violation.kind is ViolationKind.COLLINEAR
        assert violation.indices == (0, 1, 3)

    def test_triple_crossing(self) -> None:
        """Three arcs through the north pole are a TripleCrossing."""
        lons = (0.0, 1.0, 2.2)
        part_a = [lonlat(t, math.pi / 3) for t in lons]
        part_b = [lonlat(t + math.pi, math.pi / 3) for t in lons]
        violation = general_position_check(part_a + part_b, n_a=3)
        assert violation is not None
        assert violation.kind is ViolationKind.TRIPLE_CROSSING
        assert violation.indices == (0, 4, 8)

    def test_triple_crossing_in_large_drawing(self) -> None:
        """Three concurrent arcs are found among thousands of edges."""
        rng = np.random.default_rng(55)
        lons = (0.0, 1.0, 2.2)
        part_a = np.concatenate(
            [[lonlat(t, math.pi / 3) for t in lons], random_points(rng, 52)]
        )
        part_b = np.concatenate(
            [[lonlat(t + math.pi, math.pi / 3) for t in lons], random_points(rng, 52)]
        )
        violation = general_position_check(np.concatenate([part_a, part_b]), n_a=55)
        assert violation is not None
        assert violation.kind is ViolationKind.TRIPLE_CROSSING
        assert violation.indices == (0, 56, 112)

    def test_require_raises(self) -> None:
        """require_general_position raises with the violation kind."""
        pts = [lonlat(0.0, 0.0), lonlat(1.0, 0.0), lonlat(2.0, 0.0)]
        with pytest.raises(GeneralPositionViolation) as err:
            require_general_position(pts)
        assert err.value.kind is ViolationKind.COLLINEAR

    def test_too_few_points(self) -> None:
        """At least two points are needed."""
        with pytest.raises(DomainError):
            general_position_check([lonlat(0.0, 0.0)])
