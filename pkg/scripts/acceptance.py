#!/usr/bin/env python3
"""Desk-scale acceptance runs for geodesic-crossings.

Usage:
    python3 scripts/acceptance.py            # all checks
    python3 scripts/acceptance.py A2 A8      # selected checks
    python3 scripts/acceptance.py --quick    # skip the multi-minute checks
"""

from __future__ import annotations

import argparse
import itertools
import math
import os
import sys
import time
from collections.abc import Callable

import numpy as np

# Add src to path for development
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from geodesic_crossings import (
    CrossingType,
    PatternGraph,
    RngStream,
    RotationMode,
    Symmetrized,
    UniformSphere,
    base_angles,
    blowup_drawing,
    build_crossing_graph,
    circles4_measures,
    count_crossings,
    crossing_census,
    estimate_pH,
    exact_node_pair_total,
    grid_extrema,
    predicted_triangle_census,
    random_antipodal_drawing,
    random_bipartite_drawing,
    random_blowup_config,
    segments_cross,
    sweep_config,
    sweep_rows,
    t_k3_formula,
    triangle_census,
    zarankiewicz,
)
from geodesic_crossings.crossings import CrossingGraph
from geodesic_crossings.geometry import GeodesicSegment, angular_distance
from geodesic_crossings.models.census import TriangleCensus
from geodesic_crossings.theory import T_K3_LOWER, T_K3_UPPER

K2 = PatternGraph.named("k2")
K3 = PatternGraph.named("k3")
SYM = Symmetrized(inner=UniformSphere())

Check = Callable[[], tuple[bool, str]]


def a1() -> tuple[bool, str]:
    """Zarankiewicz table."""
    table = [zarankiewicz(n, n) for n in range(1, 9)]
    return table == [0, 0, 1, 4, 16, 36, 81, 144], f"Z(n,n) = {table}"


def a2() -> tuple[bool, str]:
    """Antipodal drawings reach Z(n, n)."""
    bad = [
        (n, seed)
        for n in (2, 4, 6, 8)
        for seed in range(10)
        if count_crossings(random_antipodal_drawing(n, RngStream(seed, n))) != zarankiewicz(n, n)
    ]
    return not bad, f"{40 - len(bad)}/40 drawings exact"


def a3() -> tuple[bool, str]:
    """Crossing probability 1/8 for symmetric measure pairs."""
    cfg = sweep_config(0.5, r=1e-3)
    c1, c2 = circles4_measures(cfg)
    pairs = {"sym/sym": (SYM, SYM), "circles4/circles4": (c1, c2), "sym/circles4": (SYM, c2)}
    lines, ok = [], True
    for k, (name, (mu1, mu2)) in enumerate(pairs.items()):
        est = estimate_pH(K2, mu1, mu2, 1_000_000, RngStream(3, k))
        ok &= est.agrees_with(0.125, 4.0)
        lines.append(f"{name}: {est.value:.5f} ± {est.std_error:.1e}")
    return ok, "; ".join(lines)


def a4() -> tuple[bool, str]:
    """Uniform random drawings stay close to Z(n, n)."""
    z = zarankiewicz(100, 100)
    ratios = []
    for seed in range(5):
        d = random_bipartite_drawing(UniformSphere(), UniformSphere(), 100, RngStream(seed, 4))
        ratios.append(count_crossings(d) / z)
    return all(0.9 <= r <= 1.1 for r in ratios), "ratios " + ", ".join(f"{r:.4f}" for r in ratios)


def a5() -> tuple[bool, str]:
    """Exact C, B and node identities under suitable rotation."""
    failures = []
    for n in range(2, 11):
        for seed in range(3):
            cfg = random_blowup_config(
                RngStream(seed, 77), n=n, r=1e-6, rotation=RotationMode.SUITABLE
            )
            census = crossing_census(blowup_drawing(cfg))
            if census.counts_of(CrossingType.BUNDLE_BUNDLE) != [n**4] * 4:
                failures.append((n, seed, "C"))
            if census.counts_of(CrossingType.BUNDLE) != [math.comb(n, 2) ** 2] * 16:
                failures.append((n, seed, "B"))
            for node in range(8):
                for target in range(4, 8) if node < 4 else range(4):
                    if census.node_pair_total(node, target) != exact_node_pair_total(n):
                        failures.append((n, seed, f"N{node}->{target}"))
    return not failures, f"{len(failures)} mismatches {failures[:5]}"


def a6() -> tuple[bool, str]:
    """Triangle density of circles4 samples matches the closed form."""
    lines, ok = [], True
    for seed in range(3):
        cfg = random_blowup_config(RngStream(seed, 6), r=1e-3)
        mu1, mu2 = circles4_measures(cfg)
        target = t_k3_formula(base_angles(cfg))
        est = estimate_pH(K3, mu1, mu2, 10_000_000, RngStream(seed, 60))
        ok &= est.agrees_with(target, 4.0, rel_slack=0.02)
        lines.append(f"{est.value:.6f} vs {target:.6f}")
    return ok, "; ".join(lines)


def a8() -> tuple[bool, str]:
    """Closed form stays inside its bounds; grid and sweep reach them."""
    lo, hi = float(T_K3_LOWER) - 1e-12, float(T_K3_UPPER) + 1e-12
    values = [t_k3_formula(base_angles(random_blowup_config(RngStream(k, 8)))) for k in range(1000)]
    low, _, high = grid_extrema(50)
    swept = [row.value for row in sweep_rows(20)]
    span = (max(swept) - min(swept)) / float(T_K3_UPPER - T_K3_LOWER)
    ok = all(lo < v < hi for v in values) and abs(low - float(T_K3_LOWER)) < 1e-12
    ok &= high < hi and span >= 0.8
    return ok, f"grid min {low:.10f}, max {high:.10f}, sweep span {span:.1%}"


def _typed_triangles(n: int, seed: int) -> TriangleCensus:
    cfg = random_blowup_config(RngStream(seed, 9), n=n, r=1e-6, rotation=RotationMode.SUITABLE)
    d = blowup_drawing(cfg)
    return triangle_census(build_crossing_graph(d), d.blowup)


def a9() -> tuple[bool, str]:
    """No CCC, CCN or single-node triangles in the small-radius regime."""
    census = _typed_triangles(6, 0)
    by_type = census.by_type
    ok = by_type["CCC"] == 0 and by_type["CCN"] == 0 and census.single_node == 0
    return ok, f"by_type {by_type}"


def a10() -> tuple[bool, str]:
    """Aggregate triangle count at n=30; BBB exact."""
    n = 30
    cfg = random_blowup_config(RngStream(0, 10), n=n, r=1e-6, rotation=RotationMode.SUITABLE)
    d = blowup_drawing(cfg)
    census = triangle_census(build_crossing_graph(d), d.blowup)
    pred = predicted_triangle_census(base_angles(cfg), n)
    rel = abs(census.total - pred.total_finite) / pred.total_finite
    bbb = census.by_type["BBB"] == pred.BBB_exact
    return rel < 0.1 and bbb, f"total rel error {rel:.3%}, BBB exact: {bbb}"


def _arc_samples(a: np.ndarray, b: np.ndarray, count: int) -> np.ndarray:
    theta = angular_distance(a, b)
    t = np.linspace(0.0, 1.0, count)[:, None]
    return (np.sin((1.0 - t) * theta) * a + np.sin(t * theta) * b) / math.sin(theta)


def _sampled_cross(a1, b1, a2, b2, count: int = 10_000) -> tuple[bool, float]:
    """Crossing from side changes of dense arc samples; returns (answer, margin)."""
    n1, n2 = np.cross(a1, b1), np.cross(a2, b2)
    n1, n2 = n1 / np.linalg.norm(n1), n2 / np.linalg.norm(n2)
    arc1, arc2 = _arc_samples(a1, b1, count), _arc_samples(a2, b2, count)
    side1, side2 = arc1 @ n2, arc2 @ n1
    margin = float(min(abs(side1[0]), abs(side1[-1]), abs(side2[0]), abs(side2[-1])))
    flip1 = np.flatnonzero(np.signbit(side1[:-1]) != np.signbit(side1[1:]))
    flip2 = np.flatnonzero(np.signbit(side2[:-1]) != np.signbit(side2[1:]))
    if flip1.size == 0 or flip2.size == 0:
        return False, margin
    return bool(np.dot(arc1[flip1[0]], arc2[flip2[0]]) > 0.0), margin


def a12() -> tuple[bool, str]:
    """Predicate and triangle census against independent oracles."""
    rng = np.random.default_rng(12)
    pts = rng.normal(size=(10_000, 4, 3))
    pts /= np.linalg.norm(pts, axis=2, keepdims=True)
    disagreements = 0
    for a1, b1, a2, b2 in pts:
        expected, margin = _sampled_cross(a1, b1, a2, b2)
        if margin < 1e-6:
            continue
        got = segments_cross(GeodesicSegment.between(a1, b1), GeodesicSegment.between(a2, b2))
        disagreements += got != expected

    import networkx as nx
    import scipy.sparse as sp

    wrong = 0
    for _ in range(20):
        v = int(rng.integers(10, 301))
        upper = np.triu(rng.random((v, v)) < 0.05, k=1)
        dense = (upper | upper.T).astype(np.int8)
        g = CrossingGraph(adjacency=sp.csr_matrix(dense), n_a=1, n_b=v)
        if v <= 60:
            brute = sum(
                1
                for i, j, m in itertools.combinations(range(v), 3)
                if dense[i, j] and dense[j, m] and dense[i, m]
            )
        else:
            brute = sum(nx.triangles(nx.from_numpy_array(dense)).values()) // 3
        wrong += triangle_census(g).total != brute
    return disagreements == 0 and wrong == 0, (
        f"{disagreements} predicate disagreements, {wrong} triangle mismatches"
    )


def a11() -> tuple[bool, str]:
    """Uniform triangle density near 0.0075."""
    est = estimate_pH(K3, UniformSphere(), UniformSphere(), 10_000_000, RngStream(11))
    return 0.007 <= est.value <= 0.008, f"{est.value:.6f} ± {est.std_error:.1e}"


CHECKS: dict[str, Check] = {
    "A1": a1,
    "A2": a2,
    "A3": a3,
    "A4": a4,
    "A5": a5,
    "A6": a6,
    "A8": a8,
    "A9": a9,
    "A10": a10,
    "A11": a11,
    "A12": a12,
}
SLOW = {"A6", "A10", "A11"}


def main() -> None:
    """Run the selected checks and exit non-zero on any failure."""
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("checks", nargs="*", help="check ids (default: all)")
    parser.add_argument("--quick", action="store_true", help="skip " + ", ".join(sorted(SLOW)))
    args = parser.parse_args()

    selected = [c.upper() for c in args.checks] or list(CHECKS)
    unknown = [c for c in selected if c not in CHECKS]
    if unknown:
        print(f"Error: Unknown checks: {', '.join(unknown)}")
        sys.exit(2)
    if args.quick:
        selected = [c for c in selected if c not in SLOW]

    print("=" * 60)
    print("geodesic-crossings acceptance")
    print("=" * 60)
    failed = []
    for name in selected:
        check = CHECKS[name]
        print(f"\n{'=' * 60}")
        print(f"{name}: {check.__doc__}")
        print("=" * 60)
        start = time.perf_counter()
        ok, message = check()
        elapsed = time.perf_counter() - start
        print(f"{'✅' if ok else '❌'} {message} ({elapsed:.1f}s)")
        if not ok:
            failed.append(name)

    print(f"\n{'=' * 60}")
    if failed:
        print(f"❌ Failed: {', '.join(failed)}")
        sys.exit(1)
    print(f"✅ All {len(selected)} checks passed")


if __name__ == "__main__":
    main()
