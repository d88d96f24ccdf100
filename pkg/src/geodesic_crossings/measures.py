"""Samplers for nondegenerate probability measures on S².

All samplers take either an RngStream (a fresh generator positioned at the stream's
counter) or a numpy Generator (consumed in place), and return an (size, 3) array,
or a single UnitVec when ``size`` is None.
"""

from __future__ import annotations

import logging
import math
from typing import overload

import numpy as np
from numpy.typing import NDArray

from .const import NORM_EPS
from .exceptions import InvalidSpec
from .geometry import UnitVec, circle_points, normalize, tangent_frame
from .models.blowup import BlowupConfig
from .models.measure import (
    CircleFamily,
    MeasureSpec,
    Symmetrized,
    UniformSphere,
    VonMisesFisher,
)
from .rng import RngLike, as_generator

_LOGGER = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


def _uniform(gen: np.random.Generator, size: int) -> FloatArray:
    z = gen.uniform(-1.0, 1.0, size)
    phi = gen.uniform(0.0, 2.0 * math.pi, size)
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def _circles(spec: CircleFamily, gen: np.random.Generator, size: int) -> FloatArray:
    centers = np.asarray(spec.centers, dtype=np.float64)
    which = gen.integers(0, centers.shape[0], size)
    theta = gen.uniform(0.0, 2.0 * math.pi, size)
    out = np.empty((size, 3), dtype=np.float64)
    for k in range(centers.shape[0]):
        rows = which == k
        out[rows] = circle_points(centers[k], spec.radius, theta[rows])
    return out


def _vmf(spec: VonMisesFisher, gen: np.random.Generator, size: int) -> FloatArray:
    # closed-form inverse CDF of the cosine to the mean direction on S²
    mu = np.asarray(spec.mean, dtype=np.float64)
    kappa = spec.kappa
    u = gen.random(size)
    w = 1.0 + np.log(u + (1.0 - u) * math.exp(-2.0 * kappa)) / kappa
    w = np.clip(w, -1.0, 1.0)
    theta = gen.uniform(0.0, 2.0 * math.pi, size)
    e1, e2 = tangent_frame(mu)
    rho = np.sqrt(1.0 - w * w)[:, None]
    pts = w[:, None] * mu + rho * (np.cos(theta)[:, None] * e1 + np.sin(theta)[:, None] * e2)
    return normalize(pts)


def _draw(spec: MeasureSpec, gen: np.random.Generator, size: int) -> FloatArray:
    if isinstance(spec, UniformSphere):
        return _uniform(gen, size)
    if isinstance(spec, CircleFamily):
        return _circles(spec, gen, size)
    if isinstance(spec, VonMisesFisher):
        return _vmf(spec, gen, size)
    if isinstance(spec, Symmetrized):
        pts = _draw(spec.inner, gen, size)
        flip = gen.random(size) < 0.5
        pts[flip] = -pts[flip]
        return pts
    raise InvalidSpec(f"Unknown measure variant {type(spec).__name__}")


@overload
def sample_uniform_sphere(rng: RngLike, size: None = None) -> UnitVec: ...


@overload
def sample_uniform_sphere(rng: RngLike, size: int) -> FloatArray: ...


def sample_uniform_sphere(rng: RngLike, size: int | None = None) -> UnitVec | FloatArray:
    """Uniform points: z uniform on [-1, 1], azimuth uniform on [0, 2π)."""
    return sample_measure(UniformSphere(), rng, size)


@overload
def sample_measure(spec: MeasureSpec, rng: RngLike, size: None = None) -> UnitVec: ...


@overload
def sample_measure(spec: MeasureSpec, rng: RngLike, size: int) -> FloatArray: ...


def sample_measure(
    spec: MeasureSpec, rng: RngLike, size: int | None = None
) -> UnitVec | FloatArray:
    """Draw from a measure spec.

    Args:
        spec: UniformSphere, CircleFamily, VonMisesFisher or Symmetrized
        rng: RngStream or numpy Generator
        size: Number of points; None draws a single UnitVec

    Returns:
        UnitVec, or an array of shape (size, 3)

    Raises:
        InvalidSpec: If spec is not a measure variant
    """
    gen = as_generator(rng)
    pts = _draw(spec, gen, 1 if size is None else size)
    if size is None:
        return UnitVec.from_array(pts[0])
    return pts


def _closed_under_antipode(centers: list[tuple[float, float, float]]) -> bool:
    pts = np.asarray(centers, dtype=np.float64)
    remaining = list(range(pts.shape[0]))
    while remaining:
        i = remaining.pop(0)
        target = -pts[i]
        match = next(
            (j for j in remaining if float(np.sum((pts[j] - target) ** 2)) <= NORM_EPS), None
        )
        if match is None:
            return False
        remaining.remove(match)
    return True


def is_antipodally_symmetric(spec: MeasureSpec) -> bool:
    """Structural check of μ(A) = μ(-A).

    True for Symmetrized and UniformSphere, and for a CircleFamily whose centers pair
    up with their antipodes; False for everything else.
    """
    if isinstance(spec, (Symmetrized, UniformSphere)):
        return True
    if isinstance(spec, CircleFamily):
        return _closed_under_antipode(spec.centers)
    return False


def circles4_measures(cfg: BlowupConfig) -> tuple[CircleFamily, CircleFamily]:
    """Two antipodal circle pairs per part: the sampling form of a blow-up of cfg.

    Part A circles sit on v1, -v1, v2, -v2 and part B circles on w1, -w1, w2, -w2,
    all of radius cfg.r.
    """
    centers = [(float(c[0]), float(c[1]), float(c[2])) for c in cfg.centers]
    mu1 = CircleFamily(centers=centers[:4], radius=cfg.r)
    mu2 = CircleFamily(centers=centers[4:], radius=cfg.r)
    _LOGGER.debug("circles4 measures with r=%g", cfg.r)
    return mu1, mu2
