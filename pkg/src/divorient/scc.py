"""Strongly connected components: iterative Tarjan plus a bitset oracle.

The decomposition is non-recursive (explicit DFS frames) because sampled
orientations at N in the hundreds of thousands produce DFS paths far deeper
than any recursion limit.  Component ids come out in reverse topological
order of the condensation: every arc between distinct components goes from
the higher id to the lower one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import tarjan_scc
from .graph import Digraph


@dataclass(frozen=True)
class ComponentLabeling:
    """comp_id maps vertex -> component index (slot 0 unused); sizes sum to n."""

    comp_id: np.ndarray
    comp_sizes: np.ndarray

    @property
    def num_components(self) -> int:
        return len(self.comp_sizes)

    @property
    def n(self) -> int:
        return len(self.comp_id) - 1


def strongly_connected_components(d: Digraph) -> ComponentLabeling:
    """Exact SCC decomposition in O(V + E), iterative Tarjan."""
    comp_id, ncomp = tarjan_scc(d.n, d.out_indptr, d.out_targets)
    sizes = np.bincount(comp_id[1:], minlength=ncomp)
    return ComponentLabeling(comp_id, sizes)


def largest_scc_size(labeling: ComponentLabeling) -> int:
    return int(labeling.comp_sizes.max())


def scc_size_of_vertex(labeling: ComponentLabeling, v: int) -> int:
    if not 1 <= v <= labeling.n:
        raise ValueError(f"vertex {v} out of range 1..{labeling.n}")
    return int(labeling.comp_sizes[labeling.comp_id[v]])


def largest_scc_component_id(labeling: ComponentLabeling) -> int:
    """Among maximum-size components, the one containing the smallest label."""
    target = labeling.comp_sizes.max()
    hits = labeling.comp_sizes[labeling.comp_id[1:]] == target
    first_vertex = int(np.nonzero(hits)[0][0]) + 1
    return int(labeling.comp_id[first_vertex])


def brute_force_scc(d: Digraph) -> ComponentLabeling:
    """Test oracle: components from the reflexive-transitive closure (n <= 64).

    Rows of the closure are Python-int bitsets; mutual reachability gives the
    partition.  Component ids are assigned by ascending smallest member, which
    generally differs from Tarjan's order; compare partitions, not raw ids.
    """
    n = d.n
    if n > 64:
        raise ValueError("bitset oracle limited to n <= 64")
    reach = [0] * (n + 1)
    for v in range(1, n + 1):
        row = 1 << v
        for e in range(d.out_indptr[v], d.out_indptr[v + 1]):
            row |= 1 << int(d.out_targets[e])
        reach[v] = row
    for k in range(1, n + 1):
        rk = reach[k]
        bit = 1 << k
        for v in range(1, n + 1):
            if reach[v] & bit:
                reach[v] |= rk
    comp_id = np.full(n + 1, -1, dtype=np.int32)
    sizes = []
    for v in range(1, n + 1):
        if comp_id[v] != -1:
            continue
        members = [u for u in range(v, n + 1) if (reach[v] >> u) & 1 and (reach[u] >> v) & 1]
        for u in members:
            comp_id[u] = len(sizes)
        sizes.append(len(members))
    return ComponentLabeling(comp_id, np.array(sizes, dtype=np.int64))
