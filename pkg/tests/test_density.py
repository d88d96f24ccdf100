"""Tests for exact and Monte-Carlo homomorphism densities."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp

from geodesic_crossings.const import SAMPLE_CHUNK
from geodesic_crossings.crossings import CrossingGraph, build_crossing_graph
from geodesic_crossings.density import (
    convergence_report,
    estimate_pH,
    estimate_tH_vertex_sampling,
    t_exact,
)
from geodesic_crossings.drawings import random_bipartite_drawing
from geodesic_crossings.exceptions import DomainError, UnsupportedPattern
from geodesic_crossings.models.estimate import PatternGraph
from geodesic_crossings.models.measure import Symmetrized, UniformSphere, VonMisesFisher
from geodesic_crossings.rng import RngStream
from geodesic_crossings.theory import T_K3_LOWER, T_K3_UPPER

UNIFORM = UniformSphere()
K2 = PatternGraph.named("k2")
K3 = PatternGraph.named("k3")


def complete_graph(v: int) -> CrossingGraph:
    dense = np.ones((v, v), dtype=np.int8) - np.eye(v, dtype=np.int8)
    return CrossingGraph(adjacency=sp.csr_matrix(dense), n_a=1, n_b=v)


class TestExactDensity:
    """Test t_exact."""

    def test_complete_graph_edges(self) -> None:
        """t(K2, K_v) = (v - 1)/v."""
        assert t_exact(K2, complete_graph(5)) == Fraction(4, 5)

    def test_single_triangle(self) -> None:
        """t(K3, K3) = 6/27."""
        assert t_exact(K3, complete_graph(3)) == Fraction(6, 27)

    def test_empty_crossing_graph(self) -> None:
        """A drawing of K1,n has no crossings."""
        d = random_bipartite_drawing(UNIFORM, UNIFORM, 1, RngStream(0))
        assert t_exact(K2, build_crossing_graph(d)) == 0

    def test_unsupported(self) -> None:
        """Exact densities stop at three vertices."""
        with pytest.raises(UnsupportedPattern):
            t_exact(PatternGraph.named("k4"), complete_graph(4))


class TestEstimatePH:
    """Test Monte-Carlo p_H."""

    def test_crossing_probability(self) -> None:
        """Two uniform segments cross with probability 1/8."""
        est = estimate_pH(K2, UNIFORM, UNIFORM, 200_000, RngStream(1))
        assert est.agrees_with(0.125, 4.0)
        assert est.samples == 200_000

    def test_symmetrized_measures(self) -> None:
        """Any antipodally symmetric pair gives 1/8."""
        mu = Symmetrized(inner=VonMisesFisher(mean=(0.0, 0.0, 1.0), kappa=3.0))
        est = estimate_pH(K2, mu, mu, 200_000, RngStream(2))
        assert est.agrees_with(0.125, 4.0)

    def test_edgeless_pattern(self) -> None:
        """Patterns without edges are always realized."""
        est = estimate_pH(PatternGraph.empty(3), UNIFORM, UNIFORM, 10, RngStream(0))
        assert est.value == 1.0
        assert est.std_error == 0.0

    def test_thread_count_does_not_change_result(self) -> None:
        """Chunks use fixed substreams whatever the thread count."""
        samples = 2 * SAMPLE_CHUNK + 123
        one = estimate_pH(K2, UNIFORM, UNIFORM, samples, RngStream(3), threads=1)
        four = estimate_pH(K2, UNIFORM, UNIFORM, samples, RngStream(3), threads=4)
        assert one.hits == four.hits

    def test_reproducible(self) -> None:
        """Same seed and stream, same hits."""
        a = estimate_pH(K3, UNIFORM, UNIFORM, 5000, RngStream(4, 1))
        b = estimate_pH(K3, UNIFORM, UNIFORM, 5000, RngStream(4, 1))
        assert a.hits == b.hits
        assert (a.seed, a.stream_id) == (4, 1)

    def test_no_samples(self) -> None:
        """samples must be positive."""
        with pytest.raises(DomainError):
            estimate_pH(K2, UNIFORM, UNIFORM, 0, RngStream(0))

    @pytest.mark.slow
    def test_uniform_triangle_density(self) -> None:
        """Uniform triangles land inside the admissible interval."""
        est = estimate_pH(K3, UNIFORM, UNIFORM, 10_000_000, RngStream(5))
        assert 0.007 <= est.value <= 0.008
        assert float(T_K3_LOWER) <= est.value <= float(T_K3_UPPER)


class TestVertexSampling:
    """Test estimate_tH_vertex_sampling."""

    def test_agrees_with_exact(self) -> None:
        """Sampled K2 density matches the exact one."""
        d = random_bipartite_drawing(UNIFORM, UNIFORM, 10, RngStream(6))
        g = build_crossing_graph(d)
        est = estimate_tH_vertex_sampling(K2, g, 100_000, RngStream(7))
        assert est.agrees_with(float(t_exact(K2, g)), 4.0)

    def test_no_samples(self) -> None:
        """samples must be positive."""
        with pytest.raises(DomainError):
            estimate_tH_vertex_sampling(K2, complete_graph(3), 0, RngStream(0))


class TestConvergenceReport:
    """Test convergence_report."""

    def test_rows(self) -> None:
        """One row per size with reps values each."""
        rows = convergence_report(K2, UNIFORM, UNIFORM, [4, 8], 3, RngStream(8))
        assert [row.n for row in rows] == [4, 8]
        assert all(len(row.values) == 3 for row in rows)
        assert all(row.spread is not None for row in rows)

    def test_single_rep(self) -> None:
        """One repetition has no spread; K1,1 has density 0."""
        rows = convergence_report(K2, UNIFORM, UNIFORM, [1], 1, RngStream(9))
        assert rows[0].spread is None
        assert rows[0].mean == 0.0

    def test_empty(self) -> None:
        """Sizes must be given."""
        with pytest.raises(DomainError):
            convergence_report(K2, UNIFORM, UNIFORM, [], 1, RngStream(0))

    @pytest.mark.slow
    def test_edge_density_converges(self) -> None:
        """t(K2, X_n) approaches 1/8 for uniform measures."""
        rows = convergence_report(K2, UNIFORM, UNIFORM, [40], 5, RngStream(10))
        assert rows[0].mean == pytest.approx(0.125, abs=0.01)
