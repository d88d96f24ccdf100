"""Homomorphism densities of crossing graphs.

Monte-Carlo estimates split the sample index space into chunks of SAMPLE_CHUNK; chunk c
draws from stream ``stream_id + c`` of the caller's seed, and per-chunk hit counts are
summed in chunk order. The result depends on (seed, stream_id, samples) only, never on
the number of worker threads.
"""

from __future__ import annotations

import logging
import statistics
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from .const import DEGENERATE_EPS, SAMPLE_CHUNK
from .crossings import CrossingGraph, build_crossing_graph, hom_count_small
from .drawings import random_bipartite_drawing
from .exceptions import DomainError
from .geometry import pair_codes
from .kernels import CROSS, DEGENERATE
from .measures import sample_measure
from .models.estimate import ConvergenceRow, DensityEstimate, PatternGraph
from .models.measure import MeasureSpec
from .rng import RngStream

_LOGGER = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

# redraw rounds before a persistent degeneracy is reported
_MAX_REDRAW_ROUNDS = 64


def t_exact(h: PatternGraph, g: CrossingGraph) -> Fraction:
    """hom(H, g) / |V(g)|^k as an exact fraction.

    Raises:
        UnsupportedPattern: If H has more than three vertices
    """
    return Fraction(hom_count_small(h, g), g.vertex_count**h.k)


def _chunks(samples: int) -> list[int]:
    full, rest = divmod(samples, SAMPLE_CHUNK)
    return [SAMPLE_CHUNK] * full + ([rest] if rest else [])


def _run_chunks(
    count_hits: Callable[[RngStream, int], int],
    samples: int,
    rng: RngStream,
    threads: int | None,
) -> int:
    sizes = _chunks(samples)
    streams = [rng.substream(c) for c in range(len(sizes))]
    if threads == 1 or len(sizes) == 1:
        return sum(count_hits(s, size) for s, size in zip(streams, sizes))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(count_hits, streams, sizes))


def _draw_segments(
    mu1: MeasureSpec, mu2: MeasureSpec, gen: np.random.Generator, size: int
) -> tuple[FloatArray, FloatArray]:
    a = sample_measure(mu1, gen, size)
    b = sample_measure(mu2, gen, size)
    for _ in range(_MAX_REDRAW_ROUNDS):
        bad = np.flatnonzero(np.linalg.norm(np.cross(a, b), axis=1) < DEGENERATE_EPS)
        if not bad.size:
            return a, b
        a[bad] = sample_measure(mu1, gen, bad.size)
        b[bad] = sample_measure(mu2, gen, bad.size)
    raise DomainError("Measures keep producing degenerate segments", details=[mu1, mu2])


def _pattern_hits(
    h: PatternGraph, mu1: MeasureSpec, mu2: MeasureSpec, gen: np.random.Generator, size: int
) -> int:
    # segment s of sample q is (a[q, s], b[q, s])
    a, b = _draw_segments(mu1, mu2, gen, size * h.k)
    a = a.reshape(size, h.k, 3)
    b = b.reshape(size, h.k, 3)
    rows = np.arange(size)
    hit = np.ones(size, dtype=np.bool_)
    for _ in range(_MAX_REDRAW_ROUNDS):
        degenerate = np.zeros(rows.size, dtype=np.bool_)
        ok = np.ones(rows.size, dtype=np.bool_)
        for u, v in h.edges:
            codes = pair_codes(a[rows, u], b[rows, u], a[rows, v], b[rows, v])
            degenerate |= codes == DEGENERATE
            ok &= codes == CROSS
        hit[rows] = ok
        rows = rows[degenerate]
        if not rows.size:
            return int(hit.sum())
        _LOGGER.debug("Redrawing %d degenerate samples", rows.size)
        ra, rb = _draw_segments(mu1, mu2, gen, rows.size * h.k)
        a[rows] = ra.reshape(rows.size, h.k, 3)
        b[rows] = rb.reshape(rows.size, h.k, 3)
    raise DomainError("Samples keep landing on degenerate configurations")


def estimate_pH(
    h: PatternGraph,
    mu1: MeasureSpec,
    mu2: MeasureSpec,
    samples: int,
    rng: RngStream,
    *,
    threads: int | None = None,
) -> DensityEstimate:
    """Probability that k random segments realize H in their intersection graph.

    Each sample draws k independent segments a_s b_s with a_s ~ mu1 and b_s ~ mu2 and
    checks that every H-edge maps to a crossing pair. Degenerate samples (tangent or
    co-circular arcs) are redrawn.

    Args:
        h: Pattern graph (k <= 8)
        mu1: Measure of the part A endpoints
        mu2: Measure of the part B endpoints
        samples: Number of samples
        rng: Base stream; chunk c uses rng.substream(c)
        threads: Worker threads (None lets the executor decide)

    Raises:
        DomainError: If samples < 1
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if not h.edges:
        return DensityEstimate.from_hits(
            samples, samples, seed=rng.seed, stream_id=rng.stream_id
        )

    def count_hits(stream: RngStream, size: int) -> int:
        return _pattern_hits(h, mu1, mu2, stream.generator(), size)

    hits = _run_chunks(count_hits, samples, rng, threads)
    estimate = DensityEstimate.from_hits(hits, samples, seed=rng.seed, stream_id=rng.stream_id)
    _LOGGER.info(
        "p_H estimate k=%d edges=%d: %.6f ± %.2e",
        h.k,
        len(h.edges),
        estimate.value,
        estimate.std_error,
    )
    return estimate


def estimate_tH_vertex_sampling(
    h: PatternGraph,
    g: CrossingGraph,
    samples: int,
    rng: RngStream,
    *,
    threads: int | None = None,
) -> DensityEstimate:
    """Unbiased estimate of t(H, g) from uniform k-tuples of vertices (with replacement).

    Raises:
        DomainError: If samples < 1 or g has no vertices
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    v = g.vertex_count
    if v < 1:
        raise DomainError("Crossing graph has no vertices")
    adjacency = g.adjacency

    def count_hits(stream: RngStream, size: int) -> int:
        tuples = stream.generator().integers(0, v, (size, h.k))
        ok = np.ones(size, dtype=np.bool_)
        for x, y in h.edges:
            ok &= np.asarray(adjacency[tuples[:, x], tuples[:, y]]).ravel() != 0
        return int(ok.sum())

    hits = _run_chunks(count_hits, samples, rng, threads)
    return DensityEstimate.from_hits(hits, samples, seed=rng.seed, stream_id=rng.stream_id)


def _graph_density(h: PatternGraph, g: CrossingGraph, rng: RngStream) -> float:
    if h.k <= 3:
        return float(t_exact(h, g))
    ahead = RngStream(rng.seed, rng.stream_id, counter=1 << 40)
    return estimate_tH_vertex_sampling(h, g, SAMPLE_CHUNK, ahead).value


def convergence_report(
    h: PatternGraph,
    mu1: MeasureSpec,
    mu2: MeasureSpec,
    n_values: Sequence[int],
    reps: int,
    rng: RngStream,
) -> list[ConvergenceRow]:
    """Mean and spread of t(H, X_n) over ``reps`` random drawings per n.

    Densities are exact for k <= 3 and vertex-sampled otherwise. Drawing r of size
    n_values[i] uses stream ``stream_id + i*reps + r``.

    Raises:
        DomainError: If n_values is empty or reps < 1
    """
    if not n_values:
        raise DomainError("n_values is empty")
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    rows: list[ConvergenceRow] = []
    for i, n in enumerate(n_values):
        values: list[float] = []
        for r in range(reps):
            stream = rng.substream(i * reps + r)
            drawing = random_bipartite_drawing(mu1, mu2, n, stream)
            values.append(_graph_density(h, build_crossing_graph(drawing), stream))
        spread = statistics.stdev(values) if reps > 1 else None
        rows.append(
            ConvergenceRow(
                n=n, reps=reps, mean=statistics.fmean(values), spread=spread, values=values
            )
        )
        _LOGGER.info("Convergence n=%d: mean=%.6f spread=%s", n, rows[-1].mean, spread)
    return rows
