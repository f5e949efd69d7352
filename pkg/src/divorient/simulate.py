"""Monte Carlo experiment grids over (N, rho).

Seed derivation makes every run reproducible and embarrassingly parallel:
sample j of grid cell (n index i_n, rho index i_rho) draws its orientation
from the stream seed mix_words(master_seed, i_n, i_rho, j).  Samples are
computed independently and aggregated in sample order, so results are
byte-identical for a given config no matter how many worker threads run.

Statistics: "lscc_size" (largest strongly connected component size) and
"diameter" (diameter of the largest SCC, see the diameter module for the
convention).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from ._kernels import lscc_sample_batch
from ._util import fmt17, worker_count
from .diameter import sampled_graph_diameter
from .graph import DivisorGraph, build_divisor_graph, sample_orientation_from_stream
from .rng import mix_words

STATISTICS = ("lscc_size", "diameter")

CSV_COLUMNS = "n,rho,samples,mean,variance"

#: Grids mirroring the full-scale experiments (hours of CPU) and the scaled
#: desk defaults used by the CLI and the test suite.
SCC_GRID_FULL = tuple(256 * m for m in range(1, 1025))
SCC_GRID_DESK = tuple(256 * m for m in range(1, 65))
DIAMETER_GRID_FULL = tuple(1024 * m for m in range(1, 324))
DIAMETER_GRID_DESK = tuple(1024 * m for m in range(1, 17))
RHO_GRID_DEFAULT = (0.1, 0.2, 0.3, 0.4, 0.5)


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...]
    rho_values: tuple[float, ...]
    samples_per_cell: int
    master_seed: int
    statistic: str

    def __post_init__(self):
        if not self.n_values:
            raise ValueError("n_values must be nonempty")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError("n_values must be strictly ascending")
        if min(self.n_values) < 1:
            raise ValueError("n values must be >= 1")
        if not self.rho_values:
            raise ValueError("rho_values must be nonempty")
        if any(not 0.0 <= r <= 1.0 for r in self.rho_values):
            raise ValueError("rho values must lie in [0, 1]")
        if self.samples_per_cell < 1:
            raise ValueError("samples_per_cell must be >= 1")
        if self.statistic not in STATISTICS:
            raise ValueError(f"statistic must be one of {STATISTICS}")


@dataclass(frozen=True)
class SimRecord:
    """One aggregated grid cell: sample mean and unbiased sample variance."""

    n: int
    rho: float
    samples: int
    mean: float
    variance: float
    statistic: str

    @property
    def variance_is_degenerate(self) -> bool:
        """True for single-sample cells, whose variance is reported as 0."""
        return self.samples == 1


@dataclass(frozen=True)
class FitResult:
    alpha: float
    beta: float
    mse: float


def cell_stream_seeds(master_seed: int, i_n: int, i_rho: int, count: int) -> np.ndarray:
    """Stream seeds for samples 0..count-1 of one grid cell."""
    return np.array(
        [mix_words(master_seed, i_n, i_rho, j) for j in range(count)], dtype=np.uint64
    )


def _cell_values(
    g: DivisorGraph, rho: float, seeds: np.ndarray, statistic: str, pool: ThreadPoolExecutor | None, nworkers: int
) -> np.ndarray:
    if statistic == "lscc_size":
        if pool is None or len(seeds) < 2 * nworkers:
            return lscc_sample_batch(g.n, g.edge_hi, g.edge_lo, rho, seeds)
        chunks = np.array_split(seeds, nworkers)
        futures = [
            pool.submit(lscc_sample_batch, g.n, g.edge_hi, g.edge_lo, rho, c)
            for c in chunks
            if len(c)
        ]
        return np.concatenate([f.result() for f in futures])

    def one(seed: int) -> int:
        o = sample_orientation_from_stream(g, rho, int(seed))
        return sampled_graph_diameter(g, o)

    if pool is None:
        return np.array([one(s) for s in seeds.tolist()], dtype=np.int64)
    return np.array(list(pool.map(one, seeds.tolist())), dtype=np.int64)


def run_grid(config: ExperimentConfig, workers: int | None = None) -> list[SimRecord]:
    """Aggregate the statistic over every (n, rho) cell of the grid.

    Rows come out ordered by (n, rho) position in the config.  A failing cell
    aborts the whole grid with the cell identified in the exception.
    """
    nworkers = worker_count(workers)
    records: list[SimRecord] = []
    pool = ThreadPoolExecutor(max_workers=nworkers) if nworkers > 1 else None
    try:
        for i_n, n in enumerate(config.n_values):
            g = build_divisor_graph(n)
            for i_rho, rho in enumerate(config.rho_values):
                try:
                    seeds = cell_stream_seeds(
                        config.master_seed, i_n, i_rho, config.samples_per_cell
                    )
                    values = _cell_values(g, rho, seeds, config.statistic, pool, nworkers)
                    records.append(_aggregate(n, rho, values, config.statistic))
                except Exception as exc:
                    raise RuntimeError(f"grid cell (n={n}, rho={rho}) failed: {exc}") from exc
    finally:
        if pool is not None:
            pool.shutdown()
    return records


def _aggregate(n: int, rho: float, values: np.ndarray, statistic: str) -> SimRecord:
    count = len(values)
    mean = float(np.mean(values))
    variance = float(np.var(values, ddof=1)) if count > 1 else 0.0
    return SimRecord(n, rho, count, mean, variance, statistic)


def linfit_log(records: Iterable[SimRecord]) -> FitResult:
    """Ordinary least squares of the cell means against log N (single rho).

    alpha = cov(log N, mean) / var(log N); beta = mean(y) - alpha * mean(x);
    mse is the mean squared residual.
    """
    records = list(records)
    if len({r.rho for r in records}) > 1:
        raise ValueError("records mix different rho values")
    if len({r.n for r in records}) < 2:
        raise ValueError("need at least 2 records with distinct n")
    x = np.log(np.array([r.n for r in records], dtype=np.float64))
    y = np.array([r.mean for r in records], dtype=np.float64)
    xm = x.mean()
    ym = y.mean()
    alpha = float(((x - xm) * (y - ym)).sum() / ((x - xm) ** 2).sum())
    beta = float(ym - alpha * xm)
    residuals = y - (alpha * x + beta)
    # two points are interpolated exactly; don't report rounding noise as mse
    mse = 0.0 if len(records) == 2 else float((residuals**2).mean())
    return FitResult(alpha, beta, mse)


def frontier_ratio(records: Iterable[SimRecord]) -> list[tuple[int, float]]:
    """(n, mean/n) series for largest-SCC records; the ratio always lies in (0, 1]."""
    out = []
    for r in records:
        if r.statistic != "lscc_size":
            raise ValueError("frontier ratio is defined for lscc_size records")
        out.append((r.n, r.mean / r.n))
    return out


def csv_header(statistic: str, master_seed: int) -> str:
    return (
        f"# divorient v1, statistic={statistic}, master_seed={master_seed}, "
        "diameter_convention=largest_scc"
    )


def write_csv(records: Iterable[SimRecord], fh: IO[str], statistic: str, master_seed: int) -> None:
    fh.write(csv_header(statistic, master_seed) + "\n")
    fh.write(CSV_COLUMNS + "\n")
    for r in records:
        fh.write(
            f"{r.n},{fmt17(r.rho)},{r.samples},{fmt17(r.mean)},{fmt17(r.variance)}\n"
        )


def read_csv(fh: IO[str]) -> tuple[dict, list[SimRecord]]:
    """Parse a grid CSV back into (metadata, records)."""
    meta: dict = {}
    records: list[SimRecord] = []
    header_seen = False
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for part in line.lstrip("# ").split(","):
                if "=" in part:
                    key, value = part.split("=", 1)
                    meta[key.strip()] = value.strip()
            continue
        if not header_seen:
            if line != CSV_COLUMNS:
                raise ValueError(f"unexpected column header: {line!r}")
            header_seen = True
            continue
        n_s, rho_s, samples_s, mean_s, var_s = line.split(",")
        records.append(
            SimRecord(
                int(n_s),
                float(rho_s),
                int(samples_s),
                float(mean_s),
                float(var_s),
                meta.get("statistic", "lscc_size"),
            )
        )
    if not header_seen:
        raise ValueError("empty or malformed grid CSV")
    return meta, records


def standard_error(record: SimRecord) -> float:
    """sqrt(variance / samples); 0 for degenerate single-sample cells."""
    if record.samples < 2:
        return 0.0
    return math.sqrt(record.variance / record.samples)
