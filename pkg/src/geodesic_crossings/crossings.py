"""Exact crossing and triangle censuses of geodesic drawings.

The crossing graph has one vertex per drawing edge (id i*nB + j) and an edge for every
crossing pair. Counting runs in the compiled kernels; this module assembles their
per-row partial results into scipy CSR adjacency and census models.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Iterator
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray

from .const import MAX_EXACT_PATTERN_VERTICES, NODE_COUNT, SIGN_EPS
from .drawings import BipartiteDrawing
from .exceptions import (
    CensusOverflow,
    DegenerateConfiguration,
    DomainError,
    UnsupportedPattern,
)
from .geometry import spherical_angle
from .kernels import (
    TRIANGLE_TYPES,
    bundle_pair_kernel,
    count_crossings_kernel,
    orient_by_degree,
    triangle_kernel,
    upper_neighbors_kernel,
)
from .models.blowup import BlowupMetadata
from .models.census import BundlePairCount, CrossingCensus, NodeCrossingCount, TriangleCensus
from .models.enums import CrossingType
from .models.estimate import PatternGraph

if TYPE_CHECKING:
    import networkx as nx

_LOGGER = logging.getLogger(__name__)

# int64 headroom for the triangle kernel's per-vertex counters
_TRIANGLE_LIMIT = float(2**62)


def zarankiewicz(m: int, n: int) -> int:
    """Z(m, n) = ⌊n/2⌋⌊(n-1)/2⌋⌊m/2⌋⌊(m-1)/2⌋.

    Raises:
        DomainError: If m or n is negative
    """
    if m < 0 or n < 0:
        raise DomainError(f"Part sizes must be non-negative, got ({m}, {n})")
    if m < 2 or n < 2:
        return 0
    return (n // 2) * ((n - 1) // 2) * (m // 2) * ((m - 1) // 2)


@dataclass(frozen=True)
class CrossingGraph:
    """Intersection graph of a drawing's edges.

    Attributes:
        adjacency: Symmetric CSR matrix with sorted rows, shape (V, V)
        n_a: Part A size of the source drawing
        n_b: Part B size of the source drawing
    """

    adjacency: sp.csr_matrix
    n_a: int
    n_b: int

    @property
    def vertex_count(self) -> int:
        """nA·nB."""
        return int(self.adjacency.shape[0])

    @property
    def edge_count(self) -> int:
        """Number of crossing pairs m."""
        return int(self.adjacency.nnz // 2)

    @property
    def degrees(self) -> NDArray[np.int64]:
        """Vertex degrees."""
        return np.diff(self.adjacency.indptr).astype(np.int64)

    @property
    def t_k2(self) -> float:
        """2m / |V|²."""
        v = self.vertex_count
        return 2.0 * self.edge_count / (v * v) if v else 0.0

    def neighbors(self, vertex: int) -> NDArray[np.int32]:
        """Sorted neighbors of a vertex."""
        lo, hi = self.adjacency.indptr[vertex], self.adjacency.indptr[vertex + 1]
        return self.adjacency.indices[lo:hi]

    def has_edge(self, e: int, f: int) -> bool:
        """True if drawing edges e and f cross."""
        row = self.neighbors(e)
        pos = int(np.searchsorted(row, f))
        return pos < row.size and int(row[pos]) == f

    def edges(self) -> Iterator[tuple[int, int]]:
        """Crossing pairs (e, f) with e < f."""
        upper = sp.triu(self.adjacency, k=1, format="coo")
        for e, f in zip(upper.row.tolist(), upper.col.tolist()):
            yield e, f

    def to_networkx(self) -> nx.Graph:
        """networkx copy of the graph (requires networkx)."""
        try:
            import networkx as nx
        except ImportError as err:
            raise ImportError("to_networkx needs the networkx package") from err
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges())
        return g


def _raise_degenerate(bad: NDArray[np.int64]) -> None:
    rows = np.flatnonzero(bad >= 0)
    if rows.size:
        e = int(rows[0])
        raise DegenerateConfiguration(
            "Crossing test within tolerance of zero",
            indices=(e, int(bad[e])),
            details={"degenerate_rows": int(rows.size)},
        )


def count_crossings(d: BipartiteDrawing) -> int:
    """Exact number of crossing edge pairs.

    Raises:
        DegenerateConfiguration: If a pair is tangent or shares a great circle
    """
    start = time.perf_counter()
    ea, eb, en = d.edge_arrays()
    rows, bad = count_crossings_kernel(ea, eb, en, d.n_b, SIGN_EPS)
    _raise_degenerate(bad)
    total = int(rows.sum())
    _LOGGER.debug(
        "count_crossings: %d edges, %d crossings in %.3fs",
        d.edge_count,
        total,
        time.perf_counter() - start,
    )
    return total


def build_crossing_graph(d: BipartiteDrawing) -> CrossingGraph:
    """Crossing graph over all nA·nB drawing edges.

    Raises:
        DegenerateConfiguration: If a pair is tangent or shares a great circle
    """
    start = time.perf_counter()
    ea, eb, en = d.edge_arrays()
    m = d.edge_count
    rows, bad = count_crossings_kernel(ea, eb, en, d.n_b, SIGN_EPS)
    _raise_degenerate(bad)
    indptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(rows, out=indptr[1:])
    indices = upper_neighbors_kernel(ea, eb, en, d.n_b, SIGN_EPS, indptr)

    upper = sp.csr_matrix(
        (np.ones(indices.size, dtype=np.int8), indices, indptr), shape=(m, m)
    )
    adjacency = (upper + upper.T).tocsr()
    adjacency.sort_indices()
    _LOGGER.debug(
        "build_crossing_graph: %d vertices, %d edges in %.3fs",
        m,
        indices.size,
        time.perf_counter() - start,
    )
    return CrossingGraph(adjacency=adjacency, n_a=d.n_a, n_b=d.n_b)


def _type_of_bundles(b1: tuple[int, int], b2: tuple[int, int]) -> CrossingType:
    shared = int(b1[0] == b2[0]) + int(b1[1] == b2[1])
    if shared == 2:
        return CrossingType.BUNDLE
    if shared == 1:
        return CrossingType.NODE
    return CrossingType.BUNDLE_BUNDLE


def classify_crossing(e1: int, e2: int, meta: BlowupMetadata) -> CrossingType:
    """B within a bundle, N for bundles sharing one node, C for node-disjoint bundles."""
    return _type_of_bundles(meta.bundle_of_edge(e1), meta.bundle_of_edge(e2))


def _bundle(a_node: int, b_node: int) -> int:
    return a_node * NODE_COUNT + b_node


def _node_crossings(
    table: NDArray[np.int64], meta: BlowupMetadata
) -> list[NodeCrossingCount]:
    centers = meta.config.centers
    out: list[NodeCrossingCount] = []
    for node in range(NODE_COUNT):
        a_side = node < 4
        targets = range(4, NODE_COUNT) if a_side else range(4)
        for y, z in itertools.combinations(targets, 2):
            b1 = _bundle(node, y) if a_side else _bundle(y, node)
            b2 = _bundle(node, z) if a_side else _bundle(z, node)
            out.append(
                NodeCrossingCount(
                    node=node,
                    node_label=BlowupMetadata.label(node),
                    targets=(y, z),
                    angle=spherical_angle(centers[node], centers[y], centers[z]),
                    count=int(table[b1, b2] + table[b2, b1]),
                )
            )
    return out


def crossing_census(d: BipartiteDrawing, g: CrossingGraph | None = None) -> CrossingCensus:
    """Total crossings, split into C, B and N for blow-up drawings.

    Without blow-up metadata only the total is filled in.

    Raises:
        DegenerateConfiguration: If a pair is tangent or shares a great circle
    """
    graph = g if g is not None else build_crossing_graph(d)
    meta = d.blowup
    if meta is None:
        return CrossingCensus(total=graph.edge_count)

    node_a, node_b = meta.node_arrays()
    upper = sp.triu(graph.adjacency, k=1, format="csr")
    upper.sort_indices()
    table = bundle_pair_kernel(
        upper.indptr.astype(np.int64), upper.indices.astype(np.int64), node_a, node_b
    )

    bundles = [(a, b) for a in range(4) for b in range(4, NODE_COUNT)]
    by_type = {kind.value: 0 for kind in CrossingType}
    pairs: list[BundlePairCount] = []
    for i, b1 in enumerate(bundles):
        for b2 in bundles[i:]:
            x, y = _bundle(*b1), _bundle(*b2)
            count = int(table[x, y]) if x == y else int(table[x, y] + table[y, x])
            if not count:
                continue
            kind = _type_of_bundles(b1, b2)
            by_type[kind.value] += count
            pairs.append(BundlePairCount(first=b1, second=b2, type=kind, count=count))

    census = CrossingCensus(
        total=graph.edge_count,
        by_type=by_type,
        bundle_pairs=pairs,
        per_node_N=_node_crossings(table, meta),
    )
    _LOGGER.info("Crossing census n=%d: %s", meta.config.n, by_type)
    return census


def triangle_census(g: CrossingGraph, meta: BlowupMetadata | None = None) -> TriangleCensus:
    """Exact triangle count by degree-ordered neighbor intersection.

    With blow-up metadata every triangle is keyed by its sorted type string.

    Raises:
        CensusOverflow: If the count could exceed 64-bit counters
    """
    start = time.perf_counter()
    indptr = g.adjacency.indptr.astype(np.int64)
    indices = g.adjacency.indices.astype(np.int32)
    out_ptr, out_idx = orient_by_degree(indptr, indices)

    out_deg = np.diff(out_ptr).astype(np.float64)
    if float(np.sum(out_deg * out_deg)) / 2.0 > _TRIANGLE_LIMIT:
        raise CensusOverflow(
            "Triangle count may overflow int64", details={"edges": g.edge_count}
        )

    typed = meta is not None
    if meta is not None:
        node_a, node_b = meta.node_arrays()
    else:
        node_a = node_b = np.zeros(g.vertex_count, dtype=np.int64)
    counts = triangle_kernel(out_ptr, out_idx, node_a, node_b, typed)
    totals = counts.sum(axis=0)
    total = int(totals.sum())
    _LOGGER.debug(
        "triangle_census: %d triangles over %d edges in %.3fs",
        total,
        g.edge_count,
        time.perf_counter() - start,
    )
    if not typed:
        return TriangleCensus(total=total)
    return TriangleCensus(
        total=total, by_type={name: int(c) for name, c in zip(TRIANGLE_TYPES, totals)}
    )


def _components(h: PatternGraph) -> list[tuple[int, int]]:
    parent = list(range(h.k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in h.edges:
        parent[find(a)] = find(b)
    sizes: dict[int, list[int]] = {}
    for v in range(h.k):
        sizes.setdefault(find(v), [0, 0])[0] += 1
    for a, _ in h.edges:
        sizes[find(a)][1] += 1
    return [(s[0], s[1]) for s in sizes.values()]


def hom_count_small(h: PatternGraph, g: CrossingGraph) -> int:
    """Exact hom(H, g) for patterns on at most three vertices.

    Connected components are K1, K2, P3 or K3; hom counts multiply over components.

    Raises:
        UnsupportedPattern: If H has more than three vertices
    """
    if h.k > MAX_EXACT_PATTERN_VERTICES:
        raise UnsupportedPattern(
            f"Exact counts need at most {MAX_EXACT_PATTERN_VERTICES} vertices, got {h.k}",
            details=h.edges,
        )
    deg = g.degrees
    result = 1
    for size, edges in _components(h):
        if size == 1:
            result *= g.vertex_count
        elif size == 2:
            result *= 2 * g.edge_count
        elif edges == 2:
            result *= int(np.dot(deg, deg))
        else:
            result *= 6 * triangle_census(g).total
    return result

