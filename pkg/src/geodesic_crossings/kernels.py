"""Compiled counting kernels.

Drawing edges are addressed by id e = i*nB + j. Kernels receive per-edge arrays
``ea`` (partA endpoint), ``eb`` (partB endpoint) and ``en`` (ea x eb), all of shape (M, 3).

Parallel kernels write one partial result per outer index and leave the merge to the
caller, so totals do not depend on the thread count.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from .const import ANTIPODAL_ENDPOINT_EPS

CROSS = 1
NO_CROSS = 0
DEGENERATE = -1

# Triangle type slots: sorted (t1 <= t2 <= t3) over codes C=0, B=1, N=2
TRIANGLE_TYPES = ("CCC", "CCB", "CCN", "CBB", "CBN", "CNN", "BBB", "BBN", "BNN", "NNN")


@njit(cache=True)
def _dot(ax, ay, az, bx, by, bz):
    return ax * bx + ay * by + az * bz


@njit(cache=True)
def pair_code(ea, eb, en, e, f, eps):
    """Crossing predicate for drawing edges e and f (no shared endpoint)."""
    n1x, n1y, n1z = en[e, 0], en[e, 1], en[e, 2]
    n2x, n2y, n2z = en[f, 0], en[f, 1], en[f, 2]
    a1x, a1y, a1z = ea[e, 0], ea[e, 1], ea[e, 2]
    b1x, b1y, b1z = eb[e, 0], eb[e, 1], eb[e, 2]
    a2x, a2y, a2z = ea[f, 0], ea[f, 1], ea[f, 2]
    b2x, b2y, b2z = eb[f, 0], eb[f, 1], eb[f, 2]

    # antipodal endpoints: the arcs meet only at that great-circle pair, never inside both
    saa = (a1x + a2x) ** 2 + (a1y + a2y) ** 2 + (a1z + a2z) ** 2
    sbb = (b1x + b2x) ** 2 + (b1y + b2y) ** 2 + (b1z + b2z) ** 2
    sab = (a1x + b2x) ** 2 + (a1y + b2y) ** 2 + (a1z + b2z) ** 2
    sba = (b1x + a2x) ** 2 + (b1y + a2y) ** 2 + (b1z + a2z) ** 2
    if 0.5 * min(min(saa, sbb), min(sab, sba)) <= ANTIPODAL_ENDPOINT_EPS:
        return NO_CROSS

    s1 = _dot(n1x, n1y, n1z, a2x, a2y, a2z)
    s2 = _dot(n1x, n1y, n1z, b2x, b2y, b2z)
    t1 = _dot(n2x, n2y, n2z, a1x, a1y, a1z)
    t2 = _dot(n2x, n2y, n2z, b1x, b1y, b1z)
    if abs(s1) < eps or abs(s2) < eps or abs(t1) < eps or abs(t2) < eps:
        return DEGENERATE
    if s1 * s2 > 0.0 or t1 * t2 > 0.0:
        return NO_CROSS

    # p = n1 x n2 spans the intersection line of the two planes
    px = n1y * n2z - n1z * n2y
    py = n1z * n2x - n1x * n2z
    pz = n1x * n2y - n1y * n2x

    # (a x p)·n and (p x b)·n decide whether p lies on the minor arc ab
    u1 = _dot(a1y * pz - a1z * py, a1z * px - a1x * pz, a1x * py - a1y * px, n1x, n1y, n1z)
    u2 = _dot(py * b1z - pz * b1y, pz * b1x - px * b1z, px * b1y - py * b1x, n1x, n1y, n1z)
    w1 = _dot(a2y * pz - a2z * py, a2z * px - a2x * pz, a2x * py - a2y * px, n2x, n2y, n2z)
    w2 = _dot(py * b2z - pz * b2y, pz * b2x - px * b2z, px * b2y - py * b2x, n2x, n2y, n2z)
    if u1 >= 0.0 and u2 >= 0.0 and w1 >= 0.0 and w2 >= 0.0:
        return CROSS
    if u1 <= 0.0 and u2 <= 0.0 and w1 <= 0.0 and w2 <= 0.0:
        return CROSS
    return NO_CROSS


@njit(parallel=True, cache=True)
def pair_codes_kernel(ea, eb, en, first, second, eps):
    """Predicate codes for explicit edge pairs (first[q], second[q])."""
    k = first.shape[0]
    codes = np.empty(k, dtype=np.int8)
    for q in prange(k):
        codes[q] = pair_code(ea, eb, en, first[q], second[q], eps)
    return codes


@njit(parallel=True, cache=True)
def count_crossings_kernel(ea, eb, en, nb, eps):
    """Per-edge count of crossing partners with a larger id.

    Returns:
        (row_counts, degenerate_partner) where degenerate_partner[e] is the first
        f > e whose predicate was degenerate, or -1
    """
    m = ea.shape[0]
    rows = np.zeros(m, dtype=np.int64)
    bad = np.full(m, -1, dtype=np.int64)
    for e in prange(m):
        ie = e // nb
        je = e % nb
        c = 0
        for f in range(e + 1, m):
            if f // nb == ie or f % nb == je:
                continue
            code = pair_code(ea, eb, en, e, f, eps)
            if code == CROSS:
                c += 1
            elif code == DEGENERATE and bad[e] < 0:
                bad[e] = f
        rows[e] = c
    return rows, bad


@njit(parallel=True, cache=True)
def upper_neighbors_kernel(ea, eb, en, nb, eps, indptr):
    """Fill the upper-triangular crossing adjacency given row offsets.

    ``indptr`` comes from the row counts of ``count_crossings_kernel``; each row
    lists partners f > e in increasing order.
    """
    m = ea.shape[0]
    indices = np.empty(indptr[m], dtype=np.int32)
    for e in prange(m):
        ie = e // nb
        je = e % nb
        pos = indptr[e]
        for f in range(e + 1, m):
            if f // nb == ie or f % nb == je:
                continue
            if pair_code(ea, eb, en, e, f, eps) == CROSS:
                indices[pos] = f
                pos += 1
    return indices


@njit(parallel=True, cache=True)
def triple_crossing_kernel(ea, eb, en, nb, eps, sep):
    """Find three edges through one point.

    For every edge the crossing positions (arc angle from its partA endpoint) are
    sorted; two partners whose positions differ by at most ``sep`` form a triple.

    Returns:
        (M, 2) array of partner pairs per edge, -1 where none was found
    """
    m = ea.shape[0]
    hits = np.full((m, 2), -1, dtype=np.int64)
    for e in prange(m):
        ie = e // nb
        je = e % nb
        pos = np.empty(m, dtype=np.float64)
        who = np.empty(m, dtype=np.int64)
        k = 0
        ax, ay, az = ea[e, 0], ea[e, 1], ea[e, 2]
        for f in range(m):
            if f == e or f // nb == ie or f % nb == je:
                continue
            if pair_code(ea, eb, en, e, f, eps) != CROSS:
                continue
            px = en[e, 1] * en[f, 2] - en[e, 2] * en[f, 1]
            py = en[e, 2] * en[f, 0] - en[e, 0] * en[f, 2]
            pz = en[e, 0] * en[f, 1] - en[e, 1] * en[f, 0]
            norm = math.sqrt(px * px + py * py + pz * pz)
            px, py, pz = px / norm, py / norm, pz / norm
            cx = ay * pz - az * py
            cy = az * px - ax * pz
            cz = ax * py - ay * px
            if _dot(cx, cy, cz, en[e, 0], en[e, 1], en[e, 2]) < 0.0:
                # the crossing is at -p
                px, py, pz = -px, -py, -pz
                cx, cy, cz = -cx, -cy, -cz
            cos_t = _dot(ax, ay, az, px, py, pz)
            pos[k] = math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), cos_t)
            who[k] = f
            k += 1
        if k < 2:
            continue
        order = np.argsort(pos[:k])
        for q in range(k - 1):
            if pos[order[q + 1]] - pos[order[q]] <= sep:
                hits[e, 0] = who[order[q]]
                hits[e, 1] = who[order[q + 1]]
                break
    return hits


@njit(cache=True)
def orient_by_degree(indptr, indices):
    """Keep, for each vertex, the neighbors of higher (degree, id) rank."""
    v = indptr.shape[0] - 1
    deg = indptr[1:] - indptr[:-1]
    out_ptr = np.zeros(v + 1, dtype=np.int64)
    for u in range(v):
        c = 0
        for idx in range(indptr[u], indptr[u + 1]):
            w = indices[idx]
            if deg[w] > deg[u] or (deg[w] == deg[u] and w > u):
                c += 1
        out_ptr[u + 1] = out_ptr[u] + c
    out_idx = np.empty(out_ptr[v], dtype=np.int32)
    for u in range(v):
        pos = out_ptr[u]
        for idx in range(indptr[u], indptr[u + 1]):
            w = indices[idx]
            if deg[w] > deg[u] or (deg[w] == deg[u] and w > u):
                out_idx[pos] = w
                pos += 1
    return out_ptr, out_idx


@njit(cache=True)
def _edge_type(node_a, node_b, e, f):
    same_a = node_a[e] == node_a[f]
    same_b = node_b[e] == node_b[f]
    if same_a and same_b:
        return 1  # B
    if same_a or same_b:
        return 2  # N
    return 0  # C


@njit(cache=True)
def _type_slot(t1, t2, t3):
    # sort three codes
    if t1 > t2:
        t1, t2 = t2, t1
    if t2 > t3:
        t2, t3 = t3, t2
    if t1 > t2:
        t1, t2 = t2, t1
    # enumerate sorted triples in TRIANGLE_TYPES order
    if t1 == 0:
        if t2 == 0:
            return t3  # CCC, CCB, CCN
        if t2 == 1:
            return 2 + t3  # CBB, CBN
        return 5  # CNN
    if t1 == 1:
        if t2 == 1:
            return 5 + t3  # BBB, BBN
        return 8  # BNN
    return 9  # NNN


@njit(parallel=True, cache=True)
def triangle_kernel(out_ptr, out_idx, node_a, node_b, typed):
    """Per-vertex triangle counts by neighbor intersection over oriented edges.

    Args:
        out_ptr, out_idx: degree-oriented CSR with sorted rows
        node_a, node_b: node ids of each vertex's drawing endpoints (blow-ups)
        typed: classify triangles into TRIANGLE_TYPES slots; slot 0 otherwise

    Returns:
        (V, 10) int64 partial counts
    """
    v = out_ptr.shape[0] - 1
    counts = np.zeros((v, 10), dtype=np.int64)
    for u in prange(v):
        u_lo = out_ptr[u]
        u_hi = out_ptr[u + 1]
        for idx in range(u_lo, u_hi):
            w = out_idx[idx]
            i = u_lo
            j = out_ptr[w]
            j_hi = out_ptr[w + 1]
            while i < u_hi and j < j_hi:
                a = out_idx[i]
                b = out_idx[j]
                if a < b:
                    i += 1
                elif b < a:
                    j += 1
                else:
                    if typed:
                        slot = _type_slot(
                            _edge_type(node_a, node_b, u, w),
                            _edge_type(node_a, node_b, u, a),
                            _edge_type(node_a, node_b, w, a),
                        )
                        counts[u, slot] += 1
                    else:
                        counts[u, 0] += 1
                    i += 1
                    j += 1
    return counts


@njit(cache=True)
def bundle_pair_kernel(indptr, indices, node_a, node_b):
    """Crossing counts per ordered bundle pair, over upper-triangular adjacency.

    Bundles are indexed by node_a*8 + node_b (node ids 0..7), giving a (64, 64) table;
    each unordered crossing is stored once at [bundle(e), bundle(f)] with e < f.
    """
    table = np.zeros((64, 64), dtype=np.int64)
    v = indptr.shape[0] - 1
    for e in range(v):
        be = node_a[e] * 8 + node_b[e]
        for idx in range(indptr[e], indptr[e + 1]):
            f = indices[idx]
            if f > e:
                table[be, node_a[f] * 8 + node_b[f]] += 1
    return table
