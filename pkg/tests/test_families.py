"""Tests for the sweep family and random base configurations."""

from __future__ import annotations

import pytest

from geodesic_crossings.const import CONFIG_MIN_SEPARATION
from geodesic_crossings.drawings import base_angles
from geodesic_crossings.exceptions import DomainError
from geodesic_crossings.families import (
    random_blowup_config,
    sweep_config,
    sweep_family,
    sweep_rows,
)
from geodesic_crossings.models.enums import RotationMode
from geodesic_crossings.rng import RngStream
from geodesic_crossings.theory import T_K3_LOWER, T_K3_UPPER, t_k3_formula


class TestSweepConfig:
    """Test the one-parameter sweep family."""

    def test_small_angle_end(self) -> None:
        """At t=0 the density is close to the upper bound."""
        value = t_k3_formula(base_angles(sweep_config(0.0)))
        assert value == pytest.approx(float(T_K3_UPPER), rel=0.02)

    def test_right_angle_end(self) -> None:
        """At t=1 the density is close to the lower bound."""
        value = t_k3_formula(base_angles(sweep_config(1.0)))
        assert value == pytest.approx(float(T_K3_LOWER), rel=0.02)

    def test_parameters(self) -> None:
        """n and r are carried into the config."""
        cfg = sweep_config(0.3, n=5, r=1e-4)
        assert (cfg.n, cfg.r) == (5, 1e-4)

    @pytest.mark.parametrize("t", [-0.1, 1.5])
    def test_t_out_of_range(self, t: float) -> None:
        """t must lie in [0, 1]."""
        with pytest.raises(DomainError):
            sweep_config(t)

    def test_epsilon_out_of_range(self) -> None:
        """epsilon must be small and positive."""
        with pytest.raises(DomainError):
            sweep_config(0.5, epsilon=0.5)


class TestSweepRows:
    """Test sweep_family and sweep_rows."""

    def test_family_spacing(self) -> None:
        """Steps are evenly spaced from 0 to 1."""
        ts = [t for t, _ in sweep_family(5)]
        assert ts == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_zero_steps(self) -> None:
        """At least one step is needed."""
        with pytest.raises(DomainError):
            sweep_family(0)

    def test_rows_cover_the_interval(self) -> None:
        """The sweep spans most of the admissible density interval."""
        rows = sweep_rows(20)
        assert len(rows) >= 15
        assert all(row.angle_sum_ok for row in rows)
        values = [row.value for row in rows]
        width = float(T_K3_UPPER - T_K3_LOWER)
        assert max(values) - min(values) >= 0.8 * width
        for value in values:
            assert float(T_K3_LOWER) - 1e-12 <= value <= float(T_K3_UPPER) + 1e-12


class TestRandomConfig:
    """Test random_blowup_config."""

    def test_separation(self) -> None:
        """Node centers are kept apart."""
        cfg = random_blowup_config(RngStream(1))
        assert cfg.min_center_separation > CONFIG_MIN_SEPARATION

    def test_reproducible(self) -> None:
        """One stream, one configuration."""
        assert random_blowup_config(RngStream(4, 2)) == random_blowup_config(RngStream(4, 2))

    def test_golden_leaves_offsets_unset(self) -> None:
        """Golden rotation is applied at drawing time."""
        assert random_blowup_config(RngStream(1)).rotation_offsets is None

    def test_suitable_sets_offsets(self) -> None:
        """Suitable rotation stores eight offsets."""
        cfg = random_blowup_config(RngStream(1), n=3, rotation=RotationMode.SUITABLE)
        assert cfg.rotation_offsets is not None
        assert len(cfg.rotation_offsets) == 8

    def test_density_in_bounds(self) -> None:
        """Random configurations have limiting densities inside the bounds."""
        for k in range(1000):
            value = t_k3_formula(base_angles(random_blowup_config(RngStream(k, 5))))
            assert float(T_K3_LOWER) - 1e-12 <= value <= float(T_K3_UPPER) + 1e-12
