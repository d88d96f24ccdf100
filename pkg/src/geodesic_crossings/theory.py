"""Closed-form predictions for blow-up drawings.

Leading-order formulas are taken in n with r -> 0. The ``*_finite`` triangle counts keep
the falling factorials of the vertex choices at each node, which removes the O(n⁵) part
of the error. Rational constants are kept as Fractions and converted to float only where
a float result is returned.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .const import ANGLE_SUM_TOL, NODE_COUNT
from .exceptions import DomainError
from .geometry import GeodesicSegment, UnitVec, segments_cross, spherical_angle
from .models.blowup import AngleQuad, BlowupConfig, BlowupMetadata
from .models.census import CrossingPrediction, NodePrediction, TrianglePrediction

T_K3_LOWER = Fraction(83, 12288)
T_K3_UPPER = Fraction(128, 12288)

# additive constants of the triangle count (per n⁶) and of t(K3)
_TRIANGLE_CONST = Fraction(46, 9)
_T_K3_CONST = Fraction(23, 3 * 2**10)


def _choose(n: int, k: int) -> int:
    return math.comb(n, k)


def _check_angle(x: float) -> None:
    if not 0.0 < x < math.pi:
        raise DomainError(f"Angle must be in (0, π), got {x}")


def predicted_cro(alpha: float, n: int) -> float:
    """Leading node-crossing count (π - α)/(2π)·n⁴ of two bundles meeting at angle α.

    Raises:
        DomainError: If alpha is outside (0, π)
    """
    _check_angle(alpha)
    return (math.pi - alpha) / (2.0 * math.pi) * n**4


def exact_node_pair_total(n: int) -> int:
    """cro_α + cro_(π-α) = n³(n-1)/2 for a suitably rotated blow-up."""
    return n**3 * (n - 1) // 2


def node_angles(q: AngleQuad) -> list[float]:
    """Bundle angle at each node in NODE_LABELS order (antipodal nodes share it)."""
    return [q.gamma, q.gamma, q.beta, q.beta, q.delta, q.delta, q.alpha, q.alpha]


def predicted_crossing_census(q: AngleQuad, n: int) -> CrossingPrediction:
    """C, B and N counts of D4 blown up to n vertices per node.

    C = 4n⁴ and B = 16·C(n,2)² are exact. Every node carries two bundle pairs at its
    angle and two at the complement, so N = 8n⁴ to leading order; ``N_exact`` counts
    those pairs exactly as 8·2·n³(n-1)/2.
    """
    per_node = []
    for node, angle in enumerate(node_angles(q)):
        per_node.append(
            NodePrediction(
                node=node,
                node_label=BlowupMetadata.label(node),
                angle=angle,
                cro_angle=predicted_cro(angle, n),
                cro_complement=predicted_cro(math.pi - angle, n),
                exact_pair_total=exact_node_pair_total(n),
            )
        )
    return CrossingPrediction(
        n=n,
        C=4 * n**4,
        B=16 * _choose(n, 2) ** 2,
        N=sum(2.0 * (p.cro_angle + p.cro_complement) for p in per_node),
        N_exact=NODE_COUNT * 2 * exact_node_pair_total(n),
        per_node=per_node,
    )


def finite_cro(alpha: float, n: int) -> float:
    """Node crossings of two bundles at angle α counting only distinct node vertices.

    Two edges leaving one node cross near it only when they start at different
    vertices, so the n² vertex pairs of the leading term become n(n-1).
    cro(α) + cro(π - α) is then exactly exact_node_pair_total(n).

    Raises:
        DomainError: If alpha is outside (0, π)
    """
    _check_angle(alpha)
    return (math.pi - alpha) / (2.0 * math.pi) * n**3 * (n - 1)


def predicted_triangle_census(q: AngleQuad, n: int) -> TrianglePrediction:
    """Triangle counts by type, leading-order and finite-n.

    BBB and CCB come with their exact combinatorial counts 16·C(n,3)² and
    8·C(n,2)²·n². CNN picks two distinct vertices at each of two nodes, so its
    finite count scales the leading term by (n-1)²/n². BNN picks a bundle-crossing
    pair plus a third vertex at the shared node: n·C(n,2) far-end choices times the
    n(n-1)(n-2)/2 node triples, a factor (n-1)²(n-2)/n³.
    """
    a, b, g, d = q.as_tuple()
    pi = math.pi
    n6 = float(n) ** 6
    cnn = 2.0 / n**2 * (predicted_cro(a, n) + predicted_cro(d, n)) * (
        predicted_cro(g, n) + predicted_cro(b, n)
    )
    bnn = (a * (a - pi) + b * (b - pi) + g * (g - pi) + d * (d - pi)) / pi**2 * n6 + 8 / 3 * n6
    bbb = 4 / 9 * n6
    ccb = 2.0 * n6
    total = (
        (a * a + b * b + g * g + d * d - pi * (a + b + g + d)) / pi**2
        + (2 * pi - a - d) * (2 * pi - g - b) / (2 * pi**2)
        + float(_TRIANGLE_CONST)
    ) * n6
    bbb_exact = 16 * _choose(n, 3) ** 2
    ccb_exact = 8 * _choose(n, 2) ** 2 * n**2
    cnn_finite = 2.0 / n**2 * (finite_cro(a, n) + finite_cro(d, n)) * (
        finite_cro(g, n) + finite_cro(b, n)
    )
    bnn_finite = bnn * (n - 1) ** 2 * (n - 2) / n**3
    return TrianglePrediction(
        n=n,
        CNN=cnn,
        BBB=bbb,
        CCB=ccb,
        BNN=bnn,
        total=total,
        BBB_exact=bbb_exact,
        CCB_exact=ccb_exact,
        CNN_finite=cnn_finite,
        BNN_finite=bnn_finite,
        total_finite=cnn_finite + bnn_finite + bbb_exact + ccb_exact,
    )


def t_k3_formula(q: AngleQuad) -> float:
    """Limiting triangle density of the blow-up graphon with angles q.

    Raises:
        DomainError: If an angle is outside (0, π)
    """
    for x in q.as_tuple():
        _check_angle(x)
    a, b, g, d = q.as_tuple()
    pi = math.pi
    bracket = (
        (2 * pi - a - d) * (2 * pi - g - b)
        + 2 * (a * a + b * b + g * g + d * d)
        - 2 * pi * (a + b + g + d)
    )
    return 3.0 / (2**12 * pi**2) * bracket + float(_T_K3_CONST)


def t_k3_bounds() -> tuple[Fraction, Fraction]:
    """Open interval (83/12288, 128/12288) of attainable triangle densities."""
    return T_K3_LOWER, T_K3_UPPER


def angle_sum_ok(q: AngleQuad) -> bool:
    """α + β + γ + δ < 2π, with ANGLE_SUM_TOL slack for the limiting π/2 quad."""
    return q.total < 2 * math.pi + ANGLE_SUM_TOL


def grid_extrema(steps: int = 50) -> tuple[float, AngleQuad, float]:
    """Scan t_k3_formula over angles kπ/steps (0 < k < steps) under angle_sum_ok.

    Returns:
        (min value, quad attaining it, max value)

    Raises:
        DomainError: If steps < 2
    """
    if steps < 2:
        raise DomainError(f"Grid needs at least 2 steps, got {steps}")
    pi = math.pi
    axis = np.arange(1, steps) * pi / steps
    b, g, d = np.meshgrid(axis, axis, axis, indexing="ij")
    best_min, best_max = math.inf, -math.inf
    best_quad = AngleQuad(alpha=pi / 2, beta=pi / 2, gamma=pi / 2, delta=pi / 2)
    for a in axis:
        ok = a + b + g + d < 2 * pi + ANGLE_SUM_TOL
        if not ok.any():
            continue
        values = 3.0 / (2**12 * pi**2) * (
            (2 * pi - a - d) * (2 * pi - g - b)
            + 2 * (a * a + b * b + g * g + d * d)
            - 2 * pi * (a + b + g + d)
        ) + float(_T_K3_CONST)
        masked = np.where(ok, values, np.inf)
        idx = np.unravel_index(int(np.argmin(masked)), masked.shape)
        if masked[idx] < best_min:
            best_min = float(masked[idx])
            best_quad = AngleQuad(
                alpha=float(a),
                beta=float(b[idx]),
                gamma=float(g[idx]),
                delta=float(d[idx]),
            )
        best_max = max(best_max, float(np.max(np.where(ok, values, -np.inf))))
    return best_min, best_quad, best_max


def expected_random_crossings(n: int) -> Fraction:
    """Mean crossing count n²(n-1)²/16 of a uniformly random geodesic K_{n,n}."""
    return Fraction(n * n * (n - 1) ** 2, 16)


def _base_crossings(cfg: BlowupConfig) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    centers = [UnitVec.from_array(c) for c in cfg.centers]
    bundles = [(a, b) for a in range(4) for b in range(4, NODE_COUNT)]
    found = []
    for x, y in itertools.combinations(bundles, 2):
        if x[0] == y[0] or x[1] == y[1]:
            continue
        s1 = GeodesicSegment(centers[x[0]], centers[x[1]])
        s2 = GeodesicSegment(centers[y[0]], centers[y[1]])
        if segments_cross(s1, s2):
            found.append((x, y))
    return found


def cnn_angle_pairs(cfg: BlowupConfig) -> list[tuple[float, float]]:
    """Node angles of every (crossing, closing bundle) pair of D4.

    For crossing bundles (a, b) and (c, d) the closing bundles are (a, d) and (c, b);
    each gives the angle at its part A node and the angle at its part B node between
    the closing bundle and the crossing bundle through that node.
    """
    centers = cfg.centers
    pairs: list[tuple[float, float]] = []
    for (a, b), (c, d) in _base_crossings(cfg):
        pairs.append(
            (
                spherical_angle(centers[a], centers[b], centers[d]),
                spherical_angle(centers[d], centers[c], centers[a]),
            )
        )
        pairs.append(
            (
                spherical_angle(centers[c], centers[d], centers[b]),
                spherical_angle(centers[b], centers[a], centers[c]),
            )
        )
    return pairs


def predicted_cnn_from_geometry(cfg: BlowupConfig, n: int) -> float:
    """Σ f(θ1)·f(θ2)·n⁶ over cnn_angle_pairs, with f(θ) = (π - θ)/(2π)."""

    def f(theta: float) -> float:
        return (math.pi - theta) / (2 * math.pi)

    return sum(f(t1) * f(t2) for t1, t2 in cnn_angle_pairs(cfg)) * float(n) ** 6
