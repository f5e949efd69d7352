"""Directed diameter: all-pairs BFS oracle and the iFUB exact algorithm.

Diameter convention: a sampled orientation is generally not strongly
connected, so "the diameter" of a sample means the diameter of its largest
strongly connected component (smallest-min-label tie-break).  The convention
is recorded in every CSV header this package writes.

BFS uses a reusable visitation-epoch array, so repeated eccentricity calls on
the same digraph never clear state; diameter runs are BFS-bound and this is
the dominant cost of the whole experiment pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import all_pairs_diameter_kernel, bfs_fill
from .graph import Digraph, DivisorGraph, as_symmetric_digraph, oriented_adjacency
from .scc import (
    ComponentLabeling,
    largest_scc_component_id,
    largest_scc_size,
    strongly_connected_components,
)


@dataclass(frozen=True)
class EccentricityResult:
    vertex: int
    forward_ecc: int
    reachable_count: int


class _BfsScratch:
    """Per-digraph BFS workspace (dist/parent/order plus the epoch mark)."""

    def __init__(self, n: int):
        self.dist = np.empty(n + 1, dtype=np.int32)
        self.parent = np.empty(n + 1, dtype=np.int32)
        self.order = np.empty(n + 1, dtype=np.int32)
        self.mark = np.zeros(n + 1, dtype=np.int64)
        self.epoch = 0

    def run(self, indptr: np.ndarray, targets: np.ndarray, src: int) -> tuple[int, int]:
        self.epoch += 1
        return bfs_fill(indptr, targets, src, self.dist, self.parent, self.order, self.mark, self.epoch)


def eccentricity(d: Digraph, v: int, backward: bool = False) -> EccentricityResult:
    """Max BFS distance from v (or to v, with backward=True)."""
    if not 1 <= v <= d.n:
        raise ValueError(f"vertex {v} out of range 1..{d.n}")
    scratch = _BfsScratch(d.n)
    if backward:
        ecc, count = scratch.run(d.in_indptr, d.in_targets, v)
    else:
        ecc, count = scratch.run(d.out_indptr, d.out_targets, v)
    return EccentricityResult(v, ecc, count)


def is_strongly_connected(d: Digraph) -> bool:
    """Forward and backward BFS from vertex 1 both reach everything."""
    scratch = _BfsScratch(d.n)
    _, fwd = scratch.run(d.out_indptr, d.out_targets, 1)
    if fwd < d.n:
        return False
    _, bwd = scratch.run(d.in_indptr, d.in_targets, 1)
    return bwd == d.n


def restrict_to_largest_scc(
    d: Digraph, labeling: ComponentLabeling
) -> tuple[Digraph, np.ndarray]:
    """Induced subgraph on the largest SCC plus the new->old label table.

    Returns (sub, labels) with labels[k] = original label of new vertex k
    (slot 0 unused).  New labels preserve the original ascending order.
    """
    from .graph import digraph_from_arcs

    comp = largest_scc_component_id(labeling)
    in_comp = labeling.comp_id == comp
    in_comp[0] = False
    members = np.nonzero(in_comp)[0]
    k = len(members)
    if k == d.n:
        labels = np.arange(d.n + 1, dtype=np.int64)
        return d, labels
    relabel = np.zeros(d.n + 1, dtype=np.int64)
    relabel[members] = np.arange(1, k + 1)
    degrees = np.diff(d.out_indptr[: d.n + 2])
    tails = np.repeat(np.arange(len(degrees), dtype=np.int64), degrees)
    heads = d.out_targets.astype(np.int64)
    keep = in_comp[tails] & in_comp[heads]
    sub = digraph_from_arcs(k, relabel[tails[keep]], relabel[heads[keep]])
    labels = np.concatenate(([0], members))
    return sub, labels


def all_pairs_diameter(d: Digraph) -> int:
    """Test oracle: max over all ordered pairs of BFS distance (n <= 2000)."""
    if d.n > 2000:
        raise ValueError("all-pairs oracle limited to n <= 2000")
    diam = all_pairs_diameter_kernel(d.n, d.out_indptr, d.out_targets)
    if diam < 0:
        raise ValueError("digraph is not strongly connected")
    return int(diam)


def _smallest_argmax(dist: np.ndarray, n: int, value: int) -> int:
    return int(np.nonzero(dist[1 : n + 1] == value)[0][0]) + 1


def ifub_diameter(d: Digraph, _trace: list | None = None) -> int:
    """Exact directed diameter with few BFS runs (iterative fringe upper bound).

    Start at the maximum-total-degree vertex, run a directed double sweep for
    a lower bound L and a root r (middle of the sweep path), then process BFS
    levels of r from the farthest inward, refining L with forward/backward
    eccentricities of fringe vertices while the upper bound 2*level shrinks;
    stops as soon as the bounds meet.  Raises on non-strongly-connected input.
    """
    n = d.n
    if n == 1:
        return 0
    scratch = _BfsScratch(n)

    out, tgt_out = d.out_indptr, d.out_targets
    inn, tgt_in = d.in_indptr, d.in_targets

    degrees = np.diff(out[: n + 2]) + np.diff(inn[: n + 2])
    start = int(np.argmax(degrees[1 : n + 1])) + 1

    ecc_f, count = scratch.run(out, tgt_out, start)
    if count < n:
        raise ValueError("digraph is not strongly connected")
    lower = ecc_f
    a = _smallest_argmax(scratch.dist, n, ecc_f)

    # start reaches everything; everything must also reach start
    ecc_back_start, count = scratch.run(inn, tgt_in, start)
    if count < n:
        raise ValueError("digraph is not strongly connected")
    lower = max(lower, ecc_back_start)

    ecc_b, _ = scratch.run(inn, tgt_in, a)  # dist[v] = d(v, a)
    lower = max(lower, ecc_b)
    b = _smallest_argmax(scratch.dist, n, ecc_b)

    # root = middle of a shortest path b -> a (parents point one hop toward a)
    r = b
    for _ in range(ecc_b // 2):
        r = int(scratch.parent[r])

    ecc_fr, _ = scratch.run(out, tgt_out, r)
    dist_from_r = scratch.dist[: n + 1].copy()
    ecc_br, _ = scratch.run(inn, tgt_in, r)
    dist_to_r = scratch.dist[: n + 1].copy()
    lower = max(lower, ecc_fr, ecc_br)

    for level in range(max(ecc_fr, ecc_br), 0, -1):
        upper = 2 * level
        if _trace is not None:
            _trace.append((level, lower, upper))
        if lower >= upper:
            return lower
        for u in (np.nonzero(dist_to_r[1:] == level)[0] + 1).tolist():
            ecc_u, _ = scratch.run(out, tgt_out, u)
            if ecc_u > lower:
                lower = ecc_u
                if lower >= upper:
                    return lower
        for v in (np.nonzero(dist_from_r[1:] == level)[0] + 1).tolist():
            ecc_v, _ = scratch.run(inn, tgt_in, v)
            if ecc_v > lower:
                lower = ecc_v
                if lower >= upper:
                    return lower
    return lower


def sampled_graph_diameter(g: DivisorGraph, o) -> int:
    """Diameter statistic of one sampled orientation (largest-SCC convention)."""
    if g.n == 1:
        return 0
    dg = oriented_adjacency(g, o)
    labeling = strongly_connected_components(dg)
    if largest_scc_size(labeling) == 1:
        return 0
    sub, _ = restrict_to_largest_scc(dg, labeling)
    return ifub_diameter(sub)


def undirected_diameter(g: DivisorGraph) -> int:
    """Diameter of the undirected divisor graph (2 for every N >= 3)."""
    if g.n == 1:
        return 0
    return ifub_diameter(as_symmetric_digraph(g))
