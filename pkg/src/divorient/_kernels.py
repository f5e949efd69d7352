"""Numba kernels for the hot paths.

All kernels are nogil so that thread pools get real parallelism, and
cache=True so the JIT cost is paid once per machine.  Vertex labels are
1-based; slot 0 of every per-vertex array is unused.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_U64_MULT1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_MULT2 = np.uint64(0x94D049BB133111EB)
_SH30 = np.uint64(30)
_SH27 = np.uint64(27)
_SH31 = np.uint64(31)
_SH11 = np.uint64(11)
_TWO_NEG53 = 2.0**-53


@njit(cache=True, nogil=True)
def _mix64(z):
    z = (z ^ (z >> _SH30)) * _U64_MULT1
    z = (z ^ (z >> _SH27)) * _U64_MULT2
    return z ^ (z >> _SH31)


@njit(cache=True, nogil=True)
def _tarjan_core(n, indptr, targets, comp_id, disc, low, on_stack, stack, frame_v, frame_e):
    """Iterative Tarjan over CSR; fills comp_id[1..n], returns component count.

    Component ids are assigned in emission order, which is reverse
    topological order of the condensation: every arc between distinct
    components goes from the higher id to the lower.
    """
    for v in range(n + 1):
        disc[v] = -1
        on_stack[v] = 0
    counter = 0
    ncomp = 0
    sp = 0  # Tarjan stack pointer
    for root in range(1, n + 1):
        if disc[root] != -1:
            continue
        top = 0
        frame_v[0] = root
        frame_e[0] = indptr[root]
        disc[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        on_stack[root] = 1
        while top >= 0:
            v = frame_v[top]
            e = frame_e[top]
            if e < indptr[v + 1]:
                frame_e[top] = e + 1
                w = targets[e]
                if disc[w] == -1:
                    disc[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on_stack[w] = 1
                    top += 1
                    frame_v[top] = w
                    frame_e[top] = indptr[w]
                elif on_stack[w] == 1:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                if low[v] == disc[v]:
                    while True:
                        w = stack[sp - 1]
                        sp -= 1
                        on_stack[w] = 0
                        comp_id[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                top -= 1
                if top >= 0:
                    pv = frame_v[top]
                    if low[v] < low[pv]:
                        low[pv] = low[v]
    return ncomp


@njit(cache=True, nogil=True)
def tarjan_scc(n, indptr, targets):
    """Allocating wrapper around _tarjan_core: returns (comp_id, ncomp)."""
    comp_id = np.empty(n + 1, dtype=np.int32)
    comp_id[0] = -1
    disc = np.empty(n + 1, dtype=np.int64)
    low = np.empty(n + 1, dtype=np.int64)
    on_stack = np.empty(n + 1, dtype=np.uint8)
    stack = np.empty(n + 1, dtype=np.int32)
    frame_v = np.empty(n + 1, dtype=np.int32)
    frame_e = np.empty(n + 1, dtype=np.int64)
    ncomp = _tarjan_core(n, indptr, targets, comp_id, disc, low, on_stack, stack, frame_v, frame_e)
    return comp_id, ncomp


@njit(cache=True, nogil=True)
def bfs_fill(indptr, targets, src, dist, parent, order, mark, epoch):
    """Level-synchronous BFS from src.

    Shares per-digraph scratch arrays across calls via the epoch trick: an
    entry of `mark` is valid only when equal to `epoch`, so nothing is
    cleared between calls.  Returns (eccentricity, visited count); visit
    order is recorded in order[0:count] with distances nondecreasing.
    """
    head = 0
    tail = 0
    order[tail] = src
    tail += 1
    mark[src] = epoch
    dist[src] = 0
    parent[src] = 0
    ecc = 0
    while head < tail:
        v = order[head]
        head += 1
        dv = dist[v]
        for e in range(indptr[v], indptr[v + 1]):
            w = targets[e]
            if mark[w] != epoch:
                mark[w] = epoch
                dist[w] = dv + 1
                parent[w] = v
                order[tail] = w
                tail += 1
                if dv + 1 > ecc:
                    ecc = dv + 1
    return ecc, tail


@njit(cache=True, nogil=True)
def all_pairs_diameter_kernel(n, indptr, targets):
    """Max BFS distance over all ordered pairs; -1 if some pair is unreachable."""
    dist = np.empty(n + 1, dtype=np.int32)
    parent = np.empty(n + 1, dtype=np.int32)
    order = np.empty(n + 1, dtype=np.int32)
    mark = np.zeros(n + 1, dtype=np.int64)
    diam = 0
    for src in range(1, n + 1):
        ecc, count = bfs_fill(indptr, targets, src, dist, parent, order, mark, src)
        if count < n:
            return -1
        if ecc > diam:
            diam = ecc
    return diam


@njit(cache=True, nogil=True)
def _popcount(x):
    c = 0
    while x != 0:
        x &= x - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def _largest_scc_bitset(n, adj, reach):
    """Largest SCC size of a digraph on n <= 64 vertices given adjacency bitmasks.

    reach is scratch of length n.  Reflexive-transitive closure by bitset
    Warshall, then mutual-reachability counting.
    """
    for v in range(n):
        reach[v] = adj[v] | (np.uint64(1) << np.uint64(v))
    for k in range(n):
        rk = reach[k]
        bit = np.uint64(1) << np.uint64(k)
        for v in range(n):
            if reach[v] & bit:
                reach[v] |= rk
    best = 1
    for v in range(n):
        rv = reach[v]
        cnt = 0
        for u in range(n):
            if (rv >> np.uint64(u)) & np.uint64(1):
                if (reach[u] >> np.uint64(v)) & np.uint64(1):
                    cnt += 1
        if cnt > best:
            best = cnt
    return best


@njit(cache=True, nogil=True)
def enumerate_orientation_buckets(n, edge_hi, edge_lo, start, stop, buckets):
    """Accumulate largest-SCC sizes over orientations gray(start)..gray(stop-1).

    Orientation index i maps to the bitmask gray(i) = i ^ (i >> 1); bit j set
    means edge j is reversed (lo -> hi).  For each orientation the largest SCC
    size is added to buckets[popcount(mask)].  Successive gray codes differ in
    one bit, so the adjacency bitmasks are updated in O(1) per step; the SCC
    size itself is recomputed from scratch.  Requires n <= 64.
    """
    e = edge_hi.shape[0]
    adj = np.zeros(n, dtype=np.uint64)
    reach = np.zeros(n, dtype=np.uint64)
    mask = start ^ (start >> 1)
    for j in range(e):
        hi = edge_hi[j] - 1
        lo = edge_lo[j] - 1
        if (mask >> j) & 1:
            adj[lo] |= np.uint64(1) << np.uint64(hi)
        else:
            adj[hi] |= np.uint64(1) << np.uint64(lo)
    flips = _popcount(mask)
    idx = start
    while True:
        buckets[flips] += _largest_scc_bitset(n, adj, reach)
        idx += 1
        if idx >= stop:
            break
        # gray(idx-1) ^ gray(idx) = 1 << ctz(idx)
        t = 0
        while ((idx >> t) & 1) == 0:
            t += 1
        mask ^= 1 << t
        hi = edge_hi[t] - 1
        lo = edge_lo[t] - 1
        if (mask >> t) & 1:
            adj[hi] &= ~(np.uint64(1) << np.uint64(lo))
            adj[lo] |= np.uint64(1) << np.uint64(hi)
            flips += 1
        else:
            adj[lo] &= ~(np.uint64(1) << np.uint64(hi))
            adj[hi] |= np.uint64(1) << np.uint64(lo)
            flips -= 1


@njit(cache=True, nogil=True)
def lscc_sample_batch(n, edge_hi, edge_lo, rho, seeds):
    """Largest-SCC size for one sampled orientation per stream seed.

    Fused pipeline (flips from the SplitMix64 stream, counting-sort CSR,
    iterative Tarjan) with all scratch reused across samples; bit-identical
    to composing the graph/scc modules, without per-sample Python overhead.
    """
    e = edge_hi.shape[0]
    nsamples = seeds.shape[0]
    sizes = np.empty(nsamples, dtype=np.int64)

    tails = np.empty(e, dtype=np.int32)
    heads = np.empty(e, dtype=np.int32)
    indptr = np.empty(n + 2, dtype=np.int64)
    cursor = np.empty(n + 2, dtype=np.int64)
    targets = np.empty(e, dtype=np.int32)
    comp_id = np.empty(n + 1, dtype=np.int32)
    disc = np.empty(n + 1, dtype=np.int64)
    low = np.empty(n + 1, dtype=np.int64)
    on_stack = np.empty(n + 1, dtype=np.uint8)
    stack = np.empty(n + 1, dtype=np.int32)
    frame_v = np.empty(n + 1, dtype=np.int32)
    frame_e = np.empty(n + 1, dtype=np.int64)
    comp_size = np.empty(n + 1, dtype=np.int64)

    for s in range(nsamples):
        state = seeds[s]
        for j in range(e):
            state = state + U64_GOLDEN
            u = np.float64(_mix64(state) >> _SH11) * _TWO_NEG53
            if u < rho:
                tails[j] = edge_lo[j]
                heads[j] = edge_hi[j]
            else:
                tails[j] = edge_hi[j]
                heads[j] = edge_lo[j]
        for v in range(n + 2):
            indptr[v] = 0
        for j in range(e):
            indptr[tails[j] + 1] += 1
        for v in range(1, n + 2):
            indptr[v] += indptr[v - 1]
        for v in range(n + 2):
            cursor[v] = indptr[v]
        for j in range(e):
            t = tails[j]
            targets[cursor[t]] = heads[j]
            cursor[t] += 1
        ncomp = _tarjan_core(n, indptr, targets, comp_id, disc, low, on_stack, stack, frame_v, frame_e)
        for c in range(ncomp):
            comp_size[c] = 0
        for v in range(1, n + 1):
            comp_size[comp_id[v]] += 1
        best = 1
        for c in range(ncomp):
            if comp_size[c] > best:
                best = comp_size[c]
        sizes[s] = best
    return sizes
