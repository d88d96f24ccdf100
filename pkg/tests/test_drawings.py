"""Tests for drawing constructions and blow-ups."""

from __future__ import annotations

import math

import numpy as np
import pytest

from geodesic_crossings.crossings import count_crossings, crossing_census, zarankiewicz
from geodesic_crossings.drawings import (
    BipartiteDrawing,
    antipodal_drawing,
    base_angles,
    blowup_drawing,
    blowup_tolerance,
    canonicalize,
    golden_offsets,
    random_antipodal_drawing,
    random_bipartite_drawing,
    suitable_rotation_offsets,
)
from geodesic_crossings.exceptions import (
    DomainError,
    GeneralPositionViolation,
    InvalidSpec,
    OddSize,
)
from geodesic_crossings.families import random_blowup_config, sweep_config
from geodesic_crossings.geometry import angular_distance, general_position_check, rotation_matrix
from geodesic_crossings.models.blowup import BlowupConfig
from geodesic_crossings.models.enums import CrossingType, RotationMode
from geodesic_crossings.models.measure import UniformSphere, VonMisesFisher
from geodesic_crossings.rng import RngStream
from geodesic_crossings.theory import angle_sum_ok, exact_node_pair_total


@pytest.fixture
def config():
    """A canonical base configuration from the sweep family."""
    return sweep_config(0.5)


class TestRandomDrawing:
    """Test random_bipartite_drawing."""

    def test_shape_and_general_position(self) -> None:
        """Both parts have n points and the drawing is in general position."""
        d = random_bipartite_drawing(UniformSphere(), UniformSphere(), 12, RngStream(1))
        assert (d.n_a, d.n_b, d.edge_count) == (12, 12, 144)
        assert general_position_check(d.points, n_a=12) is None

    def test_reproducible(self) -> None:
        """Same stream, same drawing."""
        mu = VonMisesFisher(mean=(0.0, 0.0, 1.0), kappa=2.0)
        a = random_bipartite_drawing(mu, UniformSphere(), 6, RngStream(5, 1))
        b = random_bipartite_drawing(mu, UniformSphere(), 6, RngStream(5, 1))
        assert np.array_equal(a.points, b.points)

    def test_rejects_empty(self) -> None:
        """n must be positive."""
        with pytest.raises(DomainError):
            random_bipartite_drawing(UniformSphere(), UniformSphere(), 0, RngStream(0))

    def test_read_only(self) -> None:
        """Coordinates cannot be modified in place."""
        d = random_bipartite_drawing(UniformSphere(), UniformSphere(), 2, RngStream(0))
        with pytest.raises(ValueError):
            d.part_a[0, 0] = 1.0

    def test_json_round_trip(self, tmp_path) -> None:
        """Written drawings read back bit-for-bit."""
        d = random_bipartite_drawing(UniformSphere(), UniformSphere(), 5, RngStream(9))
        path = tmp_path / "drawing.json"
        d.write(path, meta={"note": "x"})
        back = BipartiteDrawing.read(path)
        assert np.array_equal(back.part_a, d.part_a)
        assert np.array_equal(back.part_b, d.part_b)

    def test_read_malformed(self, tmp_path) -> None:
        """Documents without partB are InvalidSpec."""
        path = tmp_path / "bad.json"
        path.write_text('{"partA": [[0.0, 0.0, 1.0]]}')
        with pytest.raises(InvalidSpec):
            BipartiteDrawing.read(path)


class TestAntipodalDrawing:
    """Test antipodal constructions."""

    def test_parts_are_symmetric(self) -> None:
        """Second half of each part is the antipode of the first."""
        d = random_antipodal_drawing(6, RngStream(2))
        assert np.array_equal(d.part_a[3:], -d.part_a[:3])
        assert np.array_equal(d.part_b[3:], -d.part_b[:3])

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_crossing_number_is_zarankiewicz(self, n: int) -> None:
        """Antipodal drawings have exactly Z(n, n) crossings."""
        for seed in range(10):
            d = random_antipodal_drawing(n, RngStream(seed, n))
            assert count_crossings(d) == zarankiewicz(n, n)

    def test_two_by_two(self) -> None:
        """|P| = |Q| = 2 gives K4,4 with 4 crossings."""
        rng = np.random.default_rng(11)
        pts = rng.normal(size=(4, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        d = antipodal_drawing(pts[:2], pts[2:])
        assert count_crossings(d) == 4

    def test_unequal_halves(self) -> None:
        """|P| must equal |Q|."""
        with pytest.raises(OddSize):
            antipodal_drawing([(0.0, 0.0, 1.0)], [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)])

    def test_odd_n(self) -> None:
        """Random antipodal drawings need even n."""
        with pytest.raises(OddSize):
            random_antipodal_drawing(5, RngStream(0))

    def test_degenerate_points(self) -> None:
        """Q containing the antipode of a P point is not in general position."""
        with pytest.raises(GeneralPositionViolation):
            antipodal_drawing([(0.0, 0.0, 1.0)], [(0.0, 0.0, -1.0)])


class TestCanonicalize:
    """Test the reference crossing relabeling."""

    def test_sweep_configs_are_canonical(self, config) -> None:
        """canonicalize leaves an already canonical config unchanged."""
        assert canonicalize(config) == canonicalize(canonicalize(config))

    def test_relabeled_config(self, config) -> None:
        """Any antipodal relabeling canonicalizes to angles summing below 2π."""
        flipped = config.relabeled((-1, 1, -1, 1))
        assert angle_sum_ok(base_angles(flipped))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_angles_rotation_invariant(self, seed: int) -> None:
        """Rotating the whole configuration keeps the four angles."""
        cfg = random_blowup_config(RngStream(seed, 13))
        rot = rotation_matrix([0.2, 0.9, -0.4], 2.1)
        ends = ("v1", "v2", "w1", "w2")
        moved = BlowupConfig(
            **{name: tuple(rot @ np.array(getattr(cfg, name))) for name in ends},
            n=cfg.n,
            r=cfg.r,
        )
        assert base_angles(moved).as_tuple() == pytest.approx(
            base_angles(cfg).as_tuple(), abs=1e-9
        )

    def test_angle_regimes(self) -> None:
        """Sweep ends have tiny angles and near-right angles."""
        small = base_angles(sweep_config(0.0))
        right = base_angles(sweep_config(1.0))
        assert max(small.as_tuple()) < 0.1
        for angle in right.as_tuple():
            assert angle == pytest.approx(math.pi / 2, abs=0.05)


class TestBlowup:
    """Test blow-up drawings."""

    def test_single_vertex_nodes(self, config) -> None:
        """n = 1 reproduces D4 with its 4 crossings."""
        d = blowup_drawing(config)
        assert (d.n_a, d.n_b) == (4, 4)
        assert count_crossings(d) == 4

    def test_vertices_on_node_circles(self) -> None:
        """Every vertex sits at distance r from its node center."""
        cfg = sweep_config(0.5, n=3, r=1e-3)
        d = blowup_drawing(cfg)
        assert d.blowup is not None
        centers = cfg.centers
        for v, node in enumerate(d.blowup.node_of_vertex):
            assert angular_distance(d.points[v], centers[node]) == pytest.approx(1e-3, rel=1e-6)

    def test_golden_offsets_default(self, config) -> None:
        """Missing offsets are filled with golden-angle offsets."""
        d = blowup_drawing(config.model_copy(update={"n": 2, "r": 1e-3}))
        assert d.blowup is not None
        assert d.blowup.config.rotation_offsets == golden_offsets()

    def test_tolerance_scales_with_radius(self, config) -> None:
        """Tiny circles get a tolerance far below the default."""
        cfg = config.model_copy(update={"n": 4, "r": 1e-6})
        assert blowup_tolerance(cfg) < 1e-14

    def test_suitable_offsets_pair_antipodes(self) -> None:
        """An antipodal node gets the mirrored offset, shifted half a step for even n."""
        cfg = sweep_config(0.5, n=4, r=1e-4)
        offsets = suitable_rotation_offsets(cfg)
        assert len(offsets) == 8
        for node in range(0, 8, 2):
            assert offsets[node + 1] == pytest.approx(-offsets[node] + math.pi / 4)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exact_counts_with_suitable_rotation(self, n: int) -> None:
        """C and B counts and node pair totals are exact under suitable rotation."""
        for seed in range(3):
            cfg = random_blowup_config(
                RngStream(seed, 77), n=n, r=1e-6, rotation=RotationMode.SUITABLE
            )
            census = crossing_census(blowup_drawing(cfg))
            assert census.counts_of(CrossingType.BUNDLE_BUNDLE) == [n**4] * 4
            assert census.counts_of(CrossingType.BUNDLE) == [math.comb(n, 2) ** 2] * 16
            for node in range(8):
                targets = range(4, 8) if node < 4 else range(4)
                for target in targets:
                    assert census.node_pair_total(node, target) == exact_node_pair_total(n)
