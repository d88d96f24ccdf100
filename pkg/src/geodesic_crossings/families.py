"""Parameterized and random base configurations for blow-up experiments."""

from __future__ import annotations

import logging
import math

import numpy as np
from numpy.typing import NDArray

from .const import CONFIG_MAX_ATTEMPTS, CONFIG_MIN_SEPARATION, SWEEP_EPSILON, SWEEP_STEPS
from .drawings import base_angles, canonicalize, suitable_rotation_offsets
from .exceptions import (
    ConfigurationNotCanonical,
    DomainError,
    GeometryError,
    InvalidSpec,
    TooManyRejections,
)
from .geometry import rotation_matrix
from .measures import sample_uniform_sphere
from .models.blowup import BlowupConfig
from .models.enums import RotationMode
from .models.estimate import SweepRow
from .rng import RngLike, as_generator
from .theory import angle_sum_ok, t_k3_formula

_LOGGER = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


def _lonlat(lon: float, lat: float) -> FloatArray:
    return np.array([math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat)])


def _triple(v: FloatArray) -> tuple[float, float, float]:
    u = v / np.linalg.norm(v)
    return (float(u[0]), float(u[1]), float(u[2]))


def sweep_config(
    t: float,
    epsilon: float = SWEEP_EPSILON,
    *,
    n: int = 1,
    r: float | None = None,
) -> BlowupConfig:
    """Base configuration interpolating between the two extremal angle regimes.

    At t=0, v2 and w2 sit just north of v1 and w1 (a quarter turn apart on the
    equator), so w2v1 and v2w1 cross at a shallow angle and all four angles are
    O(epsilon). Increasing t rotates v1 and w1 about their midpoint by t·π; at t=1
    they have traded places, leaving v2 next to w1 and w2 next to v1 with all four
    angles close to π/2.

    Raises:
        DomainError: If t is outside [0, 1] or epsilon is not small and positive
        InvalidSpec: If the configuration at t is degenerate
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must be in [0, 1], got {t}")
    if not 0.0 < epsilon < 0.1:
        raise DomainError(f"epsilon must be in (0, 0.1), got {epsilon}")
    half = math.pi / 4
    v1 = _lonlat(-half, 0.0)
    w1 = _lonlat(half, 0.0)
    v2 = _lonlat(-half, epsilon)
    w2 = _lonlat(half, 1.3 * epsilon)

    rot = rotation_matrix(v1 + w1, t * math.pi)
    data = {
        "v1": _triple(rot @ v1),
        "v2": _triple(v2),
        "w1": _triple(rot @ w1),
        "w2": _triple(w2),
        "n": n,
        "r": r,
    }
    return BlowupConfig.from_json_dict(data)


def sweep_family(
    steps: int = SWEEP_STEPS, epsilon: float = SWEEP_EPSILON
) -> list[tuple[float, BlowupConfig | None]]:
    """(t, config) for t evenly spaced over [0, 1]; None where the config is degenerate.

    Raises:
        DomainError: If steps < 1
    """
    if steps < 1:
        raise DomainError(f"Sweep needs at least one step, got {steps}")
    ts = [0.0] if steps == 1 else [k / (steps - 1) for k in range(steps)]
    family: list[tuple[float, BlowupConfig | None]] = []
    for t in ts:
        try:
            family.append((t, sweep_config(t, epsilon)))
        except InvalidSpec as err:
            _LOGGER.warning("Sweep step t=%.4f is degenerate: %s", t, err)
            family.append((t, None))
    return family


def random_blowup_config(
    rng: RngLike,
    *,
    r: float | None = None,
    n: int = 1,
    rotation: RotationMode = RotationMode.GOLDEN,
    min_separation: float = CONFIG_MIN_SEPARATION,
) -> BlowupConfig:
    """Uniformly drawn base configuration in general position.

    Draws are rejected when two node centers are closer than ``min_separation`` or
    no relabeling has the reference crossing.

    Raises:
        TooManyRejections: After CONFIG_MAX_ATTEMPTS draws
    """
    gen = as_generator(rng)
    for attempt in range(CONFIG_MAX_ATTEMPTS):
        pts = sample_uniform_sphere(gen, 4)
        data = {
            "v1": _triple(pts[0]),
            "v2": _triple(pts[1]),
            "w1": _triple(pts[2]),
            "w2": _triple(pts[3]),
            "n": n,
            "r": r,
        }
        try:
            cfg = BlowupConfig.from_json_dict(data)
            if cfg.min_center_separation <= min_separation:
                continue
            canonicalize(cfg)
        except (InvalidSpec, ConfigurationNotCanonical, GeometryError) as err:
            _LOGGER.debug("Config attempt %d rejected: %s", attempt, err)
            continue
        if rotation is RotationMode.SUITABLE:
            cfg = cfg.model_copy(update={"rotation_offsets": suitable_rotation_offsets(cfg)})
        return cfg
    raise TooManyRejections(f"No valid base configuration in {CONFIG_MAX_ATTEMPTS} draws")


def sweep_rows(steps: int = SWEEP_STEPS, epsilon: float = SWEEP_EPSILON) -> list[SweepRow]:
    """Angles and limiting triangle density along the sweep family.

    Steps whose configuration is degenerate or has no reference crossing are skipped.

    Raises:
        DomainError: If no step yields a row
    """
    rows: list[SweepRow] = []
    for t, cfg in sweep_family(steps, epsilon):
        if cfg is None:
            continue
        try:
            q = base_angles(cfg)
            value = t_k3_formula(q)
        except (ConfigurationNotCanonical, DomainError, GeometryError) as err:
            _LOGGER.warning("Skipping sweep step t=%.4f: %s", t, err)
            continue
        rows.append(
            SweepRow(
                t=t,
                alpha=q.alpha,
                beta=q.beta,
                gamma=q.gamma,
                delta=q.delta,
                value=value,
                angle_sum_ok=angle_sum_ok(q),
            )
        )
    if not rows:
        raise DomainError("Sweep family is empty", details={"steps": steps, "epsilon": epsilon})
    return rows
