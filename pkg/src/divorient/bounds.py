"""Closed-form lower bounds on the expected largest-SCC size.

The elementary building block is the per-vertex triangle bound: for a vertex
m with tau(m) divisors, the probability that m ends up strongly connected to
vertex 1 is at least

    1 - rho (2 rho - rho^2)^(tau(m)-2) - (1 - rho)(1 - rho^2)^(tau(m)-2),

because it suffices that one of the tau(m)-2 triangles {1, d, m} over the
intermediate divisors d is cyclic, and those triangles are independent given
the direction of the edge {1, m}.  Counting vertices with many divisors then
turns this into expectation bounds:

  * the abstract bound y * (triangle factor at x) for any certified pair
    "at least y integers with tau - 2 >= x";
  * the large-N variant that takes the count from the effective
    Hardy-Ramanujan estimate (certified only above its double-exponential
    threshold);
  * the all-N primorial variant with the count floor(N / p_d#).

Raw values can be negative (vacuous); reports carry both the raw and the
clamped value, plus a `certified` flag for hypotheses that can fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numtheory as nt
from ._util import fmt17

BOUND_CSV_COLUMNS = "kind,n,rho,param,value_raw,value_clamped,certified"


@dataclass(frozen=True)
class BoundReport:
    kind: str
    n: int
    rho: float
    param: float | int | None
    value_raw: float
    value: float
    certified: bool

    def csv_row(self) -> str:
        param = "" if self.param is None else fmt17(self.param)
        return ",".join(
            [
                self.kind,
                str(self.n),
                fmt17(self.rho),
                param,
                fmt17(self.value_raw),
                fmt17(self.value),
                "true" if self.certified else "false",
            ]
        )


def _clamp(raw: float) -> float:
    return raw if raw > 0.0 else 0.0


def triangle_factor(x: float, rho: float) -> float:
    """1 - rho(2rho - rho^2)^x - (1-rho)(1-rho^2)^x for real x >= 0.

    Large x is safe: both bases lie in (0, 1) for rho in (0, 1), so the
    powers underflow cleanly to 0 and the factor tends to 1.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    return 1.0 - rho * (2.0 * rho - rho * rho) ** x - (1.0 - rho) * (1.0 - rho * rho) ** x


def triangle_prob(tau_m: int, rho: float) -> float:
    """Lower bound on P[m in the component of vertex 1] for tau(m) = tau_m."""
    if tau_m < 2:
        raise ValueError("tau_m must be >= 2 (every m >= 2 has at least 2 divisors)")
    return triangle_factor(tau_m - 2, rho)


def theorem1_bound(x: int, y: float, rho: float) -> float:
    """y * triangle factor at x; valid whenever #{n <= N : tau(n)-2 >= x} >= y."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if y < 0:
        raise ValueError("y must be >= 0")
    return y * triangle_factor(x, rho)


def best_theorem1_bound(table: nt.TauTable, rho: float) -> BoundReport:
    """Maximize the abstract bound over x, with y(x) the true tau-count.

    y(x) = #{n : tau(n) >= x + 2} is a step function of x, so the optimum is
    attained at x = t - 2 for some tau value t present in the table; only
    those are searched.
    """
    n = table.n_max
    tau = np.sort(table.tau[1:])
    best_value = 0.0
    best_x = 0
    for t in np.unique(tau).tolist():
        if t < 2:
            continue
        x = int(t) - 2
        y = n - int(np.searchsorted(tau, t, side="left"))
        value = theorem1_bound(x, y, rho)
        if value > best_value:
            best_value = value
            best_x = x
    return BoundReport("theorem1", n, rho, best_x, best_value, _clamp(best_value), True)


def _corollary4_parts(loglog_n: float, epsilon: float, rho: float) -> tuple[float, float, bool]:
    """(count ratio, triangle factor at x_N, certified) in loglog space.

    x_N = log(N)^{log2 (1-eps)} - 2 is evaluated as
    exp(log2 (1-eps) * loglog N) - 2, so N itself may be far beyond float
    range; the triangle power then underflows cleanly to 0.
    """
    _check_open_rho(rho)
    if loglog_n <= 0:
        raise ValueError("loglog N must be positive")
    count_ratio = nt.hr_count_ratio(loglog_n, epsilon)
    x_n = math.exp(math.log(2.0) * (1.0 - epsilon) * loglog_n) - 2.0
    factor = triangle_factor(x_n, rho)  # raw formula; nonpositive when x_n < 0
    certified = loglog_n >= nt.hr_threshold_loglog(epsilon)
    return count_ratio, factor, certified


def corollary4_ratio(loglog_n: float, epsilon: float, rho: float) -> tuple[float, bool]:
    """Per-N value of the large-N bound: count ratio * triangle factor."""
    count_ratio, factor, certified = _corollary4_parts(loglog_n, epsilon, rho)
    return count_ratio * factor, certified


def corollary4_bound(n: int, epsilon: float, rho: float) -> BoundReport:
    """Large-N bound: HR count estimate times the triangle factor at x_N.

    The bound is vacuous unless both factors are positive; a negative count
    ratio times a negative triangle factor is not a valid bound, so the
    clamped value is 0 whenever either factor is nonpositive.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    count_ratio, factor, certified = _corollary4_parts(math.log(math.log(n)), epsilon, rho)
    raw = n * count_ratio * factor
    value = raw if count_ratio > 0.0 and factor > 0.0 else 0.0
    return BoundReport("cor4", n, rho, epsilon, raw, value, certified)


def corollary5_bound(n: int, rho: float, x: int) -> BoundReport:
    """All-N primorial bound: floor(n / p_d#) * triangle factor, d = ceil(log2(x+2))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if x < 0:
        raise ValueError("x must be >= 0")
    _check_open_rho(rho)
    d = math.ceil(math.log2(x + 2))
    raw = (n // nt.primorial(d)) * triangle_factor(x, rho)
    return BoundReport("cor5", n, rho, x, raw, _clamp(raw), True)


def best_corollary5_bound(n: int, rho: float) -> BoundReport:
    """Maximize the primorial bound over x.

    The search space is finite: d = ceil(log2(x+2)) is nondecreasing in x, so
    once the primorial exceeds n the count floor stays 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_open_rho(rho)
    best = corollary5_bound(n, rho, 0)
    x = 0
    while True:
        x += 1
        d = math.ceil(math.log2(x + 2))
        if nt.primorial(d) > n:
            break
        report = corollary5_bound(n, rho, x)
        if report.value_raw > best.value_raw:
            best = report
    return best


def _check_open_rho(rho: float) -> None:
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in the open interval (0, 1)")
