"""Exact expected largest-SCC size as a polynomial in the reversal probability.

For a divisor graph with E edges, enumerate all 2^E orientations; an
orientation with k reversed edges has probability rho^k (1-rho)^(E-k), so

    E[largest SCC] = sum_k bucket[k] * rho^k (1-rho)^(E-k),

with bucket[k] the exact integer sum of largest-SCC sizes over orientations
with k flips.  Binomial expansion of the right-hand side (all in Python ints)
gives an integer-coefficient polynomial in rho.

Enumeration walks orientation bitmasks in Gray-code order, so each step
updates a single edge; the orientation space is split into contiguous index
ranges for the worker threads, and since buckets are exact integers the merge
is order-insensitive and the result deterministic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import enumerate_orientation_buckets
from ._util import worker_count
from .graph import build_divisor_graph

DEFAULT_EDGE_LIMIT = 26


@dataclass(frozen=True)
class RhoPolynomial:
    """Integer coefficients, ascending degree; coeffs[j] multiplies rho^j.

    Always satisfies coeffs[0] = 1 and sum(coeffs) = 1: both deterministic
    orientations are acyclic, so the largest SCC at rho = 0 and rho = 1 is a
    single vertex.
    """

    coeffs: tuple[int, ...]
    n_source: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def exact_expectation_polynomial(
    n: int, edge_limit: int = DEFAULT_EDGE_LIMIT, workers: int | None = None
) -> RhoPolynomial:
    """Exhaustive-enumeration polynomial for the divisor graph on 1..n.

    Rejects graphs with more than edge_limit edges (the default keeps the
    worst case at 2^26 SCC computations).
    """
    g = build_divisor_graph(n)
    e = g.edge_count
    if e > edge_limit:
        raise ValueError(
            f"divisor graph on 1..{n} has {e} edges, over the enumeration limit {edge_limit}"
        )
    total = 1 << e
    nworkers = min(worker_count(workers), max(1, total // (1 << 14)))
    bounds = np.linspace(0, total, nworkers + 1, dtype=np.int64)
    buckets = np.zeros(e + 1, dtype=np.int64)
    if nworkers == 1:
        enumerate_orientation_buckets(g.n, g.edge_hi, g.edge_lo, 0, total, buckets)
    else:
        chunks = [np.zeros(e + 1, dtype=np.int64) for _ in range(nworkers)]
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            futures = [
                pool.submit(
                    enumerate_orientation_buckets,
                    g.n, g.edge_hi, g.edge_lo, int(bounds[i]), int(bounds[i + 1]), chunks[i],
                )
                for i in range(nworkers)
            ]
            for f in futures:
                f.result()
        for c in chunks:
            buckets += c
    coeffs = _expand_buckets([int(b) for b in buckets], e)
    poly = RhoPolynomial(coeffs, n)
    if poly.coeffs[0] != 1 or sum(poly.coeffs) != 1:
        raise AssertionError(f"enumeration inconsistency for n={n}: {poly.coeffs}")
    return poly


def _expand_buckets(buckets: list[int], e: int) -> tuple[int, ...]:
    """sum_k bucket[k] rho^k (1-rho)^(E-k) expanded exactly over the integers."""
    coeffs = [0] * (e + 1)
    for k, b in enumerate(buckets):
        if b == 0:
            continue
        m = e - k
        for t in range(m + 1):
            coeffs[k + t] += b * math.comb(m, t) * (-1 if t & 1 else 1)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def evaluate(p: RhoPolynomial, rho: float) -> float:
    """Horner evaluation of the expectation polynomial."""
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * rho + c
    return acc


def substitute_one_minus_rho(p: RhoPolynomial) -> RhoPolynomial:
    """Exact coefficients of p(1 - rho); equals p itself for these polynomials."""
    out = [0] * len(p.coeffs)
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * (-1 if j & 1 else 1)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return RhoPolynomial(tuple(out), p.n_source)


def polynomial_csv_row(p: RhoPolynomial) -> str:
    """CSV row `N,degree,c0,...,cd` with exact decimal integers."""
    return ",".join([str(p.n_source), str(p.degree)] + [str(c) for c in p.coeffs])
