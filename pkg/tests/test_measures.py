"""Tests for sphere measure samplers."""

from __future__ import annotations

import numpy as np
import pytest

from geodesic_crossings.exceptions import InvalidSpec
from geodesic_crossings.families import sweep_config
from geodesic_crossings.geometry import UnitVec, angular_distance
from geodesic_crossings.measures import (
    circles4_measures,
    is_antipodally_symmetric,
    sample_measure,
    sample_uniform_sphere,
)
from geodesic_crossings.models.measure import (
    CircleFamily,
    Symmetrized,
    UniformSphere,
    VonMisesFisher,
    parse_measure_spec,
)
from geodesic_crossings.rng import RngStream

NORTH = (0.0, 0.0, 1.0)


class TestUniformSphere:
    """Test uniform sampling."""

    def test_shape_and_norm(self) -> None:
        """Samples are unit rows."""
        pts = sample_uniform_sphere(RngStream(1), 1000)
        assert pts.shape == (1000, 3)
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)

    def test_single_point(self) -> None:
        """size=None returns a UnitVec."""
        assert isinstance(sample_uniform_sphere(RngStream(1)), UnitVec)

    def test_centered(self) -> None:
        """The sample mean is close to the origin."""
        pts = sample_uniform_sphere(RngStream(2), 20000)
        assert np.all(np.abs(pts.mean(axis=0)) < 0.03)

    def test_reproducible(self) -> None:
        """One stream, one sample."""
        a = sample_uniform_sphere(RngStream(3, 4), 50)
        b = sample_uniform_sphere(RngStream(3, 4), 50)
        assert np.array_equal(a, b)

    def test_second_moment(self) -> None:
        """E[z²] = 1/3."""
        pts = sample_uniform_sphere(RngStream(6), 100_000)
        assert float(np.mean(pts[:, 2] ** 2)) == pytest.approx(1 / 3, abs=0.005)

    @pytest.mark.slow
    def test_hemisphere_balance(self) -> None:
        """Each coordinate half-space holds half the mass."""
        pts = sample_uniform_sphere(RngStream(7), 1_000_000)
        for axis in range(3):
            assert float(np.mean(pts[:, axis] > 0)) == pytest.approx(0.5, abs=0.002)


class TestCircleFamily:
    """Test circle mixtures."""

    def test_points_on_circles(self) -> None:
        """Every sample is at the family radius from its nearest center."""
        spec = CircleFamily(centers=[NORTH, (1.0, 0.0, 0.0)], radius=0.1)
        pts = sample_measure(spec, RngStream(5), 500)
        for p in pts:
            d = min(angular_distance(p, c) for c in spec.centers)
            assert d == pytest.approx(0.1, abs=1e-9)

    def test_both_circles_used(self) -> None:
        """Centers are picked uniformly."""
        spec = CircleFamily(centers=[NORTH, (0.0, 0.0, -1.0)], radius=0.2)
        pts = sample_measure(spec, RngStream(6), 4000)
        upper = float(np.mean(pts[:, 2] > 0))
        assert 0.45 < upper < 0.55

    def test_rejects_large_radius(self) -> None:
        """Radius must stay below π/2."""
        with pytest.raises(InvalidSpec):
            parse_measure_spec({"type": "circles", "centers": [NORTH], "radius": 2.0})

    def test_rejects_duplicate_centers(self) -> None:
        """Centers must be distinct."""
        with pytest.raises(InvalidSpec):
            parse_measure_spec({"type": "circles", "centers": [NORTH, NORTH], "radius": 0.1})


class TestVonMisesFisher:
    """Test vMF sampling."""

    def test_concentration(self) -> None:
        """Mean cosine to the mean direction is coth(κ) - 1/κ."""
        spec = VonMisesFisher(mean=NORTH, kappa=50.0)
        pts = sample_measure(spec, RngStream(7), 20000)
        assert float(pts[:, 2].mean()) == pytest.approx(1.0 / np.tanh(50.0) - 1 / 50.0, abs=2e-3)

    def test_rejects_nonpositive_kappa(self) -> None:
        """κ must be positive."""
        with pytest.raises(InvalidSpec):
            parse_measure_spec({"type": "vmf", "mean": list(NORTH), "kappa": 0.0})


class TestSymmetrized:
    """Test antipodal symmetrization."""

    def test_half_flipped(self) -> None:
        """About half of a concentrated inner measure lands at the antipode."""
        spec = Symmetrized(inner=VonMisesFisher(mean=NORTH, kappa=50.0))
        pts = sample_measure(spec, RngStream(8), 10000)
        south = float(np.mean(pts[:, 2] < 0))
        assert 0.47 < south < 0.53

    def test_nested_parse(self) -> None:
        """Symmetrized specs parse from nested JSON."""
        spec = parse_measure_spec('{"type": "symmetrized", "inner": {"type": "uniform"}}')
        assert isinstance(spec, Symmetrized)
        assert isinstance(spec.inner, UniformSphere)

    def test_unknown_type(self) -> None:
        """Unknown discriminators are InvalidSpec."""
        with pytest.raises(InvalidSpec):
            parse_measure_spec({"type": "gaussian"})


class TestSymmetryCheck:
    """Test is_antipodally_symmetric."""

    def test_uniform(self) -> None:
        """The uniform measure is symmetric."""
        assert is_antipodally_symmetric(UniformSphere())

    def test_vmf(self) -> None:
        """A vMF measure is not."""
        assert not is_antipodally_symmetric(VonMisesFisher(mean=NORTH, kappa=1.0))

    def test_circle_pairs(self) -> None:
        """Circle families are symmetric iff their centers pair with antipodes."""
        paired = CircleFamily(centers=[NORTH, (0.0, 0.0, -1.0)], radius=0.1)
        single = CircleFamily(centers=[NORTH, (1.0, 0.0, 0.0)], radius=0.1)
        assert is_antipodally_symmetric(paired)
        assert not is_antipodally_symmetric(single)

    def test_circles4(self) -> None:
        """Blow-up circle measures are symmetric and sit on the node centers."""
        cfg = sweep_config(0.5, r=0.01)
        mu1, mu2 = circles4_measures(cfg)
        assert is_antipodally_symmetric(mu1)
        assert is_antipodally_symmetric(mu2)
        assert mu1.radius == mu2.radius == 0.01
        assert np.allclose(np.asarray(mu2.centers), cfg.centers[4:])


class TestNondegenerate:
    """No measure puts mass on a great circle."""

    @pytest.mark.parametrize(
        "spec",
        [
            UniformSphere(),
            CircleFamily(centers=[NORTH, (1.0, 0.0, 0.0)], radius=0.1),
            VonMisesFisher(mean=NORTH, kappa=5.0),
            Symmetrized(inner=CircleFamily(centers=[NORTH, (1.0, 0.0, 0.0)], radius=0.1)),
        ],
        ids=["uniform", "circles", "vmf", "symmetrized"],
    )
    def test_great_circle_bands_are_empty(self, spec) -> None:
        """At most 1e-4 of the draws lie within 1e-6 of any tested great circle."""
        pts = sample_measure(spec, RngStream(17), 100_000)
        normals = sample_uniform_sphere(RngStream(18), 20)
        near = np.abs(pts @ normals.T) <= 1e-6
        assert near.mean(axis=0).max() <= 1e-4
