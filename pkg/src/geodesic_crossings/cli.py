"""Command-line front end.

Subcommands:
    draw       random (or antipodal) geodesic drawing of K_{n,n} to JSON
    crossings  crossing count, t(K2, X_n), cr/Z and the blow-up census of a drawing
    density    Monte-Carlo p_H for two measures
    blowup     exact census of a blow-up against the closed-form predictions
    sweep      angles and t(K3) along the interpolating configuration family

Exit codes: 0 success, 2 usage or config error, 3 degenerate geometry or census overflow.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import numba

from .artifacts import write_csv, write_json
from .config import ExperimentConfig
from .const import (
    CONFIG_STREAM,
    DRAWING_STREAM,
    EXIT_DEGENERATE,
    EXIT_OK,
    EXIT_USAGE,
    NODE_COUNT,
)
from .crossings import (
    build_crossing_graph,
    crossing_census,
    triangle_census,
    zarankiewicz,
)
from .density import estimate_pH
from .drawings import (
    BipartiteDrawing,
    base_angles,
    blowup_drawing,
    golden_offsets,
    random_antipodal_drawing,
    random_bipartite_drawing,
    suitable_rotation_offsets,
)
from .exceptions import (
    CensusOverflow,
    ConfigurationNotCanonical,
    DegenerateConfiguration,
    DomainError,
    GeneralPositionViolation,
    InvalidSpec,
    OddSize,
    TooManyRejections,
    UnsupportedPattern,
)
from .families import random_blowup_config, sweep_rows
from .measures import circles4_measures, is_antipodally_symmetric
from .models.blowup import BlowupConfig
from .models.enums import RotationMode
from .models.estimate import PatternGraph
from .models.measure import MeasureSpec, Symmetrized, UniformSphere, parse_measure_spec
from .theory import (
    exact_node_pair_total,
    expected_random_crossings,
    predicted_crossing_census,
    predicted_triangle_census,
    t_k3_formula,
)

_LOGGER = logging.getLogger(__name__)

USAGE_ERRORS = (InvalidSpec, DomainError, UnsupportedPattern, OddSize, OSError)
DEGENERATE_ERRORS = (
    TooManyRejections,
    GeneralPositionViolation,
    DegenerateConfiguration,
    ConfigurationNotCanonical,
    CensusOverflow,
)

# perturbation attempts before a blow-up in general position is given up
BLOWUP_RETRIES = 8


class UsageError(Exception):
    """Argument values rejected before any work starts."""


def _load_config(cfg: ExperimentConfig, *, n: int | None = None) -> BlowupConfig:
    """BlowupConfig from --config, or a random one from the seed's config stream."""
    rotation = RotationMode(cfg.rotation)
    per_node = n if n is not None else 1
    if cfg.config_path is None:
        return random_blowup_config(
            cfg.stream(CONFIG_STREAM), r=cfg.r, n=per_node, rotation=rotation
        )
    try:
        raw = json.loads(Path(cfg.config_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise InvalidSpec(f"{cfg.config_path} is not JSON", details=str(err)) from err
    if not isinstance(raw, dict):
        raise InvalidSpec(f"{cfg.config_path} does not hold a JSON object")
    data: dict[str, Any] = {**raw, "n": per_node}
    if cfg.r is not None:
        data["r"] = cfg.r
    base = BlowupConfig.from_json_dict(data)
    if rotation is RotationMode.SUITABLE and base.rotation_offsets is None:
        base = base.model_copy(update={"rotation_offsets": suitable_rotation_offsets(base)})
    return base


def resolve_measure(
    text: str, part: int, config: Callable[[], BlowupConfig]
) -> MeasureSpec:
    """Measure from a shortcut (uniform, sym-uniform, circles4), @file or JSON text.

    ``part`` picks the circles4 side: 0 for part A (v-nodes), 1 for part B.
    """
    if text == "uniform":
        return UniformSphere()
    if text == "sym-uniform":
        return Symmetrized(inner=UniformSphere())
    if text == "circles4":
        return circles4_measures(config())[part]
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    return parse_measure_spec(text)


def _measures(cfg: ExperimentConfig) -> tuple[MeasureSpec, MeasureSpec]:
    cache: list[BlowupConfig] = []

    def config() -> BlowupConfig:
        if not cache:
            cache.append(_load_config(cfg))
        return cache[0]

    mu1 = resolve_measure(cfg.mu1 or "uniform", 0, config)
    mu2 = resolve_measure(cfg.mu2 or "uniform", 1, config)
    return mu1, mu2


def cmd_draw(cfg: ExperimentConfig) -> int:
    """Write a random geodesic drawing as JSON."""
    if cfg.n is None or cfg.n < 1:
        raise UsageError(f"--n must be >= 1, got {cfg.n}")
    rng = cfg.stream(DRAWING_STREAM)
    if cfg.antipodal:
        drawing = random_antipodal_drawing(cfg.n, rng)
    else:
        mu1, mu2 = _measures(cfg)
        drawing = random_bipartite_drawing(mu1, mu2, cfg.n, rng)
    if cfg.output is None:
        sys.stdout.write(drawing.to_json(cfg.header) + "\n")
    else:
        drawing.write(cfg.output, cfg.header)
    _LOGGER.info("Drew K_{%d,%d}", drawing.n_a, drawing.n_b)
    return EXIT_OK


def cmd_crossings(cfg: ExperimentConfig) -> int:
    """Crossing count and census of a drawing file."""
    if cfg.input_path is None:
        raise UsageError("crossings needs --input")
    drawing = BipartiteDrawing.read(cfg.input_path)
    graph = build_crossing_graph(drawing)
    census = crossing_census(drawing, graph)
    z = zarankiewicz(drawing.n_a, drawing.n_b)
    result: dict[str, Any] = {
        "n_a": drawing.n_a,
        "n_b": drawing.n_b,
        "crossings": census.total,
        "t_k2": graph.t_k2,
        "zarankiewicz": z,
        "ratio": census.total / z if z else None,
        "expected_random": (
            float(expected_random_crossings(drawing.n_a)) if drawing.n_a == drawing.n_b else None
        ),
    }
    if drawing.blowup is not None:
        result["n"] = drawing.blowup.config.n
        result["r"] = drawing.blowup.config.r
        result["census"] = census
    write_json(cfg.output, cfg.header, result)
    if cfg.csv_path is not None:
        row = {k: v for k, v in result.items() if k != "census"}
        row.update({f"type_{k}": v for k, v in census.by_type.items()})
        write_csv(cfg.csv_path, cfg.header_line(), [row], append=True)
    return EXIT_OK


def _density_reference(
    pattern: PatternGraph, mu1: MeasureSpec, mu2: MeasureSpec, cfg: ExperimentConfig
) -> float | None:
    if pattern.k == 2 and pattern.edges and (
        is_antipodally_symmetric(mu1) and is_antipodally_symmetric(mu2)
    ):
        return 1 / 8
    if pattern.k == 3 and len(pattern.edges) == 3 and cfg.mu1 == cfg.mu2 == "circles4":
        return t_k3_formula(base_angles(_load_config(cfg)))
    return None


def cmd_density(cfg: ExperimentConfig) -> int:
    """Monte-Carlo estimate of p_H."""
    if cfg.samples is None or cfg.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {cfg.samples}")
    pattern = PatternGraph.named(cfg.pattern or "k2")
    mu1, mu2 = _measures(cfg)
    estimate = estimate_pH(pattern, mu1, mu2, cfg.samples, cfg.stream_base, threads=cfg.threads)
    low, high = estimate.interval(cfg.z)
    result: dict[str, Any] = {
        "pattern": cfg.pattern or "k2",
        "estimate": estimate,
        "interval": [low, high],
        "z": cfg.z,
        "reference": _density_reference(pattern, mu1, mu2, cfg),
    }
    write_json(cfg.output, cfg.header, result)
    if cfg.csv_path is not None:
        row = {
            "pattern": result["pattern"],
            "mu1": cfg.mu1,
            "mu2": cfg.mu2,
            "value": estimate.value,
            "std_error": estimate.std_error,
            "samples": estimate.samples,
            "seed": estimate.seed,
            "reference": result["reference"],
        }
        write_csv(cfg.csv_path, cfg.header_line(), [row], append=True)
    return EXIT_OK


def _perturbed(base: BlowupConfig, attempt: int) -> BlowupConfig:
    if attempt == 0:
        return base
    offsets = base.rotation_offsets or golden_offsets()
    # mirror pairs move in opposite directions so antipodal vertices stay apart
    delta = attempt * 0.05 * math.pi / base.n
    moved = [o + (delta if k % 2 == 0 else -delta) for k, o in enumerate(offsets)]
    return base.model_copy(update={"rotation_offsets": moved})


def _build_blowup(base: BlowupConfig) -> BipartiteDrawing:
    for attempt in range(BLOWUP_RETRIES - 1):
        try:
            return blowup_drawing(_perturbed(base, attempt))
        except GeneralPositionViolation as err:
            _LOGGER.warning("Blow-up attempt %d not in general position: %s", attempt, err)
    return blowup_drawing(_perturbed(base, BLOWUP_RETRIES - 1))


def _rel_error(measured: float, predicted: float) -> float | None:
    if predicted == 0:
        return None if measured else 0.0
    return (measured - predicted) / predicted


def cmd_blowup(cfg: ExperimentConfig) -> int:
    """Exact blow-up census against the closed-form predictions."""
    if cfg.n is None or cfg.n < 1:
        raise UsageError(f"--n must be >= 1, got {cfg.n}")
    n = cfg.n
    base = _load_config(cfg, n=n)
    drawing = _build_blowup(base)
    assert drawing.blowup is not None
    graph = build_crossing_graph(drawing)
    census = crossing_census(drawing, graph)
    triangles = triangle_census(graph, drawing.blowup)
    q = base_angles(base)
    cross_pred = predicted_crossing_census(q, n)
    tri_pred = predicted_triangle_census(q, n)

    rows: list[tuple[str, float, float]] = [
        ("crossings_total", census.total, cross_pred.total),
        ("crossings_C", census.by_type["C"], cross_pred.C),
        ("crossings_B", census.by_type["B"], cross_pred.B),
        ("crossings_N", census.by_type["N"], cross_pred.N),
    ]
    for node in range(NODE_COUNT):
        target = 4 if node < 4 else 0
        rows.append(
            (
                f"node_pair_{drawing.blowup.label(node)}",
                census.node_pair_total(node, target),
                exact_node_pair_total(n),
            )
        )
    rows += [
        ("triangles_total", triangles.total, tri_pred.total_finite),
        ("triangles_total_leading", triangles.total, tri_pred.total),
        ("triangles_CNN", triangles.by_type["CNN"], tri_pred.CNN_finite),
        ("triangles_BBB", triangles.by_type["BBB"], tri_pred.BBB_exact),
        ("triangles_CCB", triangles.by_type["CCB"], tri_pred.CCB_exact),
        ("triangles_BNN", triangles.by_type["BNN"], tri_pred.BNN_finite),
        ("triangles_CCC", triangles.by_type["CCC"], 0),
        ("triangles_CCN", triangles.by_type["CCN"], 0),
        ("triangles_single_node", triangles.single_node or 0, 0),
    ]
    v = graph.vertex_count
    rows.append(("t_k3", 6 * triangles.total / v**3, t_k3_formula(q)))

    table = [
        {
            "n": n,
            "r": base.r,
            "quantity": name,
            "measured": measured,
            "predicted": predicted,
            "rel_error": _rel_error(measured, predicted),
        }
        for name, measured, predicted in rows
    ]
    write_csv(cfg.output, cfg.header_line(), table)
    if cfg.csv_path is not None:
        write_csv(cfg.csv_path, cfg.header_line(), table, append=True)
    return EXIT_OK


def cmd_sweep(cfg: ExperimentConfig) -> int:
    """Tabulate angles and t(K3) along the sweep family."""
    rows = sweep_rows(cfg.steps, cfg.epsilon)
    table = [row.model_dump() for row in rows]
    write_csv(cfg.output, cfg.header_line(), table)
    if cfg.csv_path is not None:
        write_csv(cfg.csv_path, cfg.header_line(), table, append=True)
    return EXIT_OK


COMMANDS: dict[str, Callable[[ExperimentConfig], int]] = {
    "draw": cmd_draw,
    "crossings": cmd_crossings,
    "density": cmd_density,
    "blowup": cmd_blowup,
    "sweep": cmd_sweep,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
    common.add_argument("--threads", type=int, default=None, help="worker thread bound")
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    common.add_argument("--csv", dest="csv_path", default=None, help="CSV file to append to")

    measures = argparse.ArgumentParser(add_help=False)
    measures.add_argument("--mu1", default="uniform", help="uniform|sym-uniform|circles4|JSON")
    measures.add_argument("--mu2", default="uniform", help="uniform|sym-uniform|circles4|JSON")

    blow = argparse.ArgumentParser(add_help=False)
    blow.add_argument("--config", dest="config_path", default=None, help="BlowupConfig JSON")
    blow.add_argument("--r", type=float, default=None, help="node circle radius")
    blow.add_argument(
        "--rotation", choices=[m.value for m in RotationMode], default="suitable"
    )

    parser = _Parser(prog="geodesic-crossings", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_draw = sub.add_parser("draw", parents=[common, measures, blow], help="random drawing")
    p_draw.add_argument("--n", type=int, required=True)
    p_draw.add_argument(
        "--antipodal",
        action="store_true",
        help="antipodal drawing from n/2 + n/2 uniform points",
    )

    p_cross = sub.add_parser("crossings", parents=[common], help="crossing census")
    p_cross.add_argument("-i", "--input", dest="input_path", required=True)

    p_dens = sub.add_parser("density", parents=[common, measures, blow], help="p_H estimate")
    p_dens.add_argument("--h", dest="pattern", default="k2", help="k1|k2|p3|k3|c4|k4")
    p_dens.add_argument("--samples", type=int, required=True)

    p_blow = sub.add_parser("blowup", parents=[common, blow], help="blow-up census")
    p_blow.add_argument("--n", type=int, required=True)

    p_sweep = sub.add_parser("sweep", parents=[common], help="t(K3) sweep")
    p_sweep.add_argument("--steps", type=int, default=ExperimentConfig.steps)
    p_sweep.add_argument("--epsilon", type=float, default=ExperimentConfig.epsilon)
    return parser


def _set_threads(threads: int | None) -> None:
    if threads is None:
        return
    if threads < 1:
        raise UsageError(f"--threads must be >= 1, got {threads}")
    numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE
    cfg = ExperimentConfig.from_namespace(ns)
    level = {0: logging.WARNING, 1: logging.INFO}.get(cfg.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        if not 0 <= cfg.seed < 2**64:
            raise UsageError(f"--seed must fit in 64 bits, got {cfg.seed}")
        _set_threads(cfg.threads)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, *USAGE_ERRORS) as err:
        _LOGGER.error("%s", err)
        return EXIT_USAGE
    except DEGENERATE_ERRORS as err:
        _LOGGER.error("%s", err)
        return EXIT_DEGENERATE
