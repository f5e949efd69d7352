"""Shared test utilities: independent oracles and random digraph generators."""

from __future__ import annotations

import numpy as np

from divorient.graph import Digraph, digraph_from_arcs


def trial_division_tau(n: int) -> int:
    """Divisor count by trial division up to sqrt(n)."""
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count


def random_digraph(rng: np.random.Generator, n: int, arc_budget: int) -> Digraph:
    """Random simple digraph on n labeled vertices (no self-loops, no duplicates)."""
    if n == 1 or arc_budget == 0:
        return digraph_from_arcs(n, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))
    tails = rng.integers(1, n + 1, size=arc_budget)
    heads = rng.integers(1, n + 1, size=arc_budget)
    keep = tails != heads
    codes = np.unique(tails[keep] * (n + 1) + heads[keep])
    return digraph_from_arcs(n, codes // (n + 1), codes % (n + 1))


def random_sc_digraph(rng: np.random.Generator, n: int, extra: int) -> Digraph:
    """Strongly connected digraph: a random Hamiltonian cycle plus extra arcs."""
    perm = rng.permutation(n) + 1
    cycle_tails = perm
    cycle_heads = np.roll(perm, -1)
    tails = np.concatenate([cycle_tails, rng.integers(1, n + 1, size=extra)])
    heads = np.concatenate([cycle_heads, rng.integers(1, n + 1, size=extra)])
    keep = tails != heads
    codes = np.unique(tails[keep] * (n + 1) + heads[keep])
    return digraph_from_arcs(n, codes // (n + 1), codes % (n + 1))


def partition_signature(labeling) -> set[frozenset[int]]:
    """Component partition as a set of vertex frozensets (id-order independent)."""
    groups: dict[int, set[int]] = {}
    for v in range(1, labeling.n + 1):
        groups.setdefault(int(labeling.comp_id[v]), set()).add(v)
    return {frozenset(members) for members in groups.values()}


def digraph_arcs(d: Digraph) -> list[tuple[int, int]]:
    """All (tail, head) arcs from the out-CSR."""
    arcs = []
    for v in range(1, d.n + 1):
        for e in range(d.out_indptr[v], d.out_indptr[v + 1]):
            arcs.append((v, int(d.out_targets[e])))
    return arcs
