"""Divisor graph construction and seeded random orientation.

The divisor graph on 1..N has an edge {a, b} whenever one label divides the
other.  The reference orientation points every edge from the larger label to
its divisor (hi -> lo); a random orientation reverses each edge independently
with probability rho.

Edge order is canonical: lexicographic by (hi, lo).  All flip-bit indices,
dump formats, and RNG consumption follow this order, so two runs (or two
implementations) with the same seed produce identical orientations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rng import mix_words, stream_units


@dataclass(frozen=True)
class SeedSpec:
    """Master seed for orientation sampling.

    The stream seed of a sample is mix_words(master_seed, n, rho_index,
    sample_index); see rng.mix_words for the folding rule.
    """

    master_seed: int


@dataclass(frozen=True)
class DivisorGraph:
    """Canonical edge list plus CSR adjacency of the reference orientation.

    edge_hi[i] -> edge_lo[i] is the reference direction of edge i; edges are
    sorted lexicographically by (hi, lo).  fwd is the hi->lo adjacency, rev
    the lo->hi one.  Vertex ids are 32-bit; labels are 1-based.
    """

    n: int
    edge_hi: np.ndarray
    edge_lo: np.ndarray
    fwd_indptr: np.ndarray = field(repr=False)
    fwd_targets: np.ndarray = field(repr=False)
    rev_indptr: np.ndarray = field(repr=False)
    rev_targets: np.ndarray = field(repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.edge_hi)


@dataclass(frozen=True)
class Orientation:
    """Flip bits over the canonical edge order; bit set = edge reversed."""

    flips: np.ndarray
    seed_info: tuple = ()

    @property
    def flip_count(self) -> int:
        return int(np.count_nonzero(self.flips))


@dataclass(frozen=True)
class Digraph:
    """CSR adjacency of one concrete orientation (out and in directions)."""

    n: int
    out_indptr: np.ndarray = field(repr=False)
    out_targets: np.ndarray = field(repr=False)
    in_indptr: np.ndarray = field(repr=False)
    in_targets: np.ndarray = field(repr=False)

    @property
    def arc_count(self) -> int:
        return len(self.out_targets)

    def out_degree(self, v: int) -> int:
        return int(self.out_indptr[v + 1] - self.out_indptr[v])

    def in_degree(self, v: int) -> int:
        return int(self.in_indptr[v + 1] - self.in_indptr[v])


def _csr(n: int, keys: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(keys, minlength=n + 2)[: n + 2]
    indptr = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts[: n + 1], out=indptr[1:])
    order = np.argsort(keys, kind="stable")
    return indptr, values[order].astype(np.int32, copy=False)


def build_divisor_graph(n: int) -> DivisorGraph:
    """All edges (hi, lo) with lo a proper divisor of hi <= n, O(N log N)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = np.arange(1, n + 1, dtype=np.int64)
    counts = n // base - 1  # proper multiples of each lo
    lo = np.repeat(base, counts)
    total = int(counts.sum())
    starts = np.zeros(n, dtype=np.int64)
    np.cumsum(counts[:-1], out=starts[1:])
    multiplier = np.arange(total, dtype=np.int64) - np.repeat(starts, counts) + 2
    hi = lo * multiplier
    order = np.lexsort((lo, hi))
    edge_hi = hi[order].astype(np.int32)
    edge_lo = lo[order].astype(np.int32)
    fwd_indptr, fwd_targets = _csr(n, edge_hi, edge_lo)
    rev_indptr, rev_targets = _csr(n, edge_lo, edge_hi)
    return DivisorGraph(n, edge_hi, edge_lo, fwd_indptr, fwd_targets, rev_indptr, rev_targets)


def sample_orientation(
    g: DivisorGraph,
    rho: float,
    seed: SeedSpec | int,
    sample_index: int,
    rho_index: int = 0,
) -> Orientation:
    """Reverse each edge independently with probability rho, reproducibly.

    The stream seed is mix_words(master_seed, g.n, rho_index, sample_index);
    edge i flips iff the i-th stream unit is < rho.  Identical arguments give
    bit-identical orientations on any platform.
    """
    master = seed.master_seed if isinstance(seed, SeedSpec) else int(seed)
    stream_seed = mix_words(master, g.n, rho_index, sample_index)
    return sample_orientation_from_stream(
        g, rho, stream_seed, seed_info=(master, g.n, rho_index, sample_index)
    )


def sample_orientation_from_stream(
    g: DivisorGraph, rho: float, stream_seed: int, seed_info: tuple = ()
) -> Orientation:
    """Same flip rule as sample_orientation but with an explicit stream seed."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    flips = stream_units(stream_seed, g.edge_count) < rho
    return Orientation(flips, seed_info or (stream_seed,))


def orientation_from_bits(g: DivisorGraph, mask: int) -> Orientation:
    """Orientation with flip bits taken from an integer bitmask (bit i = edge i)."""
    e = g.edge_count
    if mask < 0 or mask >> e:
        raise ValueError("mask out of range for edge count")
    bits = (mask >> np.arange(e, dtype=np.int64)) & 1
    return Orientation(bits.astype(bool), ("mask", mask))


def oriented_adjacency(g: DivisorGraph, o: Orientation) -> Digraph:
    """Digraph realizing the orientation: edge i is hi->lo, or lo->hi if flipped."""
    if len(o.flips) != g.edge_count:
        raise ValueError("flip vector length does not match edge count")
    tails = np.where(o.flips, g.edge_lo, g.edge_hi)
    heads = np.where(o.flips, g.edge_hi, g.edge_lo)
    return digraph_from_arcs(g.n, tails, heads)


def digraph_from_arcs(n: int, tails: np.ndarray, heads: np.ndarray) -> Digraph:
    """Build a Digraph from parallel arc arrays (1-based labels)."""
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    out_indptr, out_targets = _csr(n, tails, heads)
    in_indptr, in_targets = _csr(n, heads, tails)
    return Digraph(n, out_indptr, out_targets, in_indptr, in_targets)


def as_symmetric_digraph(g: DivisorGraph) -> Digraph:
    """Both directions of every edge; BFS on this measures undirected distance."""
    tails = np.concatenate([g.edge_hi, g.edge_lo])
    heads = np.concatenate([g.edge_lo, g.edge_hi])
    return digraph_from_arcs(g.n, tails, heads)


def dump_orientation(g: DivisorGraph, o: Orientation, rho: float | None = None) -> str:
    """Debug dump: header line plus the flip bits in canonical edge order."""
    info = o.seed_info
    seed = info[0] if info else ""
    idx = info[-1] if len(info) > 1 else ""
    header = f"N={g.n} E={g.edge_count} seed={seed} idx={idx} rho={'' if rho is None else rho}"
    bits = "".join("1" if b else "0" for b in o.flips)
    return header + "\n" + bits + "\n"
