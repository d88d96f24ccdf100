"""Configuration for geodesic-crossings experiments."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, fields
from typing import Any

from .const import CONFIDENCE_Z, SWEEP_EPSILON, SWEEP_STEPS, TOOL_NAME
from .rng import RngStream


@dataclass
class ExperimentConfig:
    """Parameters of one CLI run.

    Everything needed to replay a run lives here; the header written into every
    artifact is derived from it.

    Attributes:
        command: Subcommand name (draw, crossings, density, blowup, sweep)
        n: Vertices per part (draw) or per node (blowup)
        r: Node circle radius of a blow-up (None selects the default rule)
        seed: 64-bit RNG seed
        samples: Monte-Carlo sample count
        threads: Worker thread bound (None leaves it to numba and the executor)
        mu1: Part A measure (JSON text or shortcut)
        mu2: Part B measure (JSON text or shortcut)
        pattern: Pattern graph name (k1, k2, p3, k3, c4, k4)
        config_path: BlowupConfig JSON file
        input_path: Drawing JSON file (crossings)
        antipodal: Draw P ∪ -P and Q ∪ -Q instead of sampling both parts
        rotation: Blow-up rotation mode (golden or suitable)
        steps: Sweep steps
        epsilon: Sweep family displacement
        z: Confidence multiplier for reported intervals
        output: Primary output path (JSON or CSV; None writes to stdout)
        csv_path: CSV file that rows are appended to
        verbose: 0 warnings, 1 info, 2 debug
    """

    command: str
    n: int | None = None
    r: float | None = None
    seed: int = 0
    samples: int | None = None
    threads: int | None = None
    mu1: str | None = None
    mu2: str | None = None
    pattern: str | None = None
    config_path: str | None = None
    input_path: str | None = None
    antipodal: bool = False
    rotation: str = "suitable"
    steps: int = SWEEP_STEPS
    epsilon: float = SWEEP_EPSILON
    z: float = CONFIDENCE_Z
    output: str | None = None
    csv_path: str | None = None
    verbose: int = 0

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> ExperimentConfig:
        """Pick the known fields out of an argparse namespace."""
        values = vars(ns)
        known = {f.name: values[f.name] for f in fields(cls) if f.name in values}
        return cls(**known)

    def stream(self, stream_id: int) -> RngStream:
        """RNG stream ``stream_id`` of this run's seed."""
        return RngStream(self.seed, stream_id)

    @property
    def stream_base(self) -> RngStream:
        """Stream 0 of this run's seed."""
        return self.stream(0)

    @property
    def header(self) -> dict[str, Any]:
        """Tool name, version, full config and seed."""
        from . import __version__

        return {
            "tool": TOOL_NAME,
            "version": __version__,
            "config": self.replay_dict(),
            "seed": self.seed,
        }

    def header_line(self) -> str:
        """One-line CSV comment form of the header."""
        return f"# {TOOL_NAME} {self.header['version']} {json.dumps(self.replay_dict())}"

    def replay_dict(self) -> dict[str, Any]:
        """Config fields that affect results (output locations and verbosity dropped)."""
        data = asdict(self)
        for key in ("output", "csv_path", "verbose", "threads"):
            data.pop(key)
        return data
