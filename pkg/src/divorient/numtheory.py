"""Divisor-function sieves, primorials, and prime-sum numerics.

Everything the bound machinery needs from multiplicative number theory:
the tau sieve tau(1..N), prime lists, primorials, the Mertens sum with its
Rosser-Schoenfeld bracket, the prime-power sums E(N) and V(N)^2 behind the
Turan-Kubilius variance bound, their k>=2 tails S_E / S_V, and the
effective Hardy-Ramanujan count bound with its double-exponential validity
threshold.

Scalar accumulations go through math.fsum (error-free transformation), so
the fixed absolute slacks in the E(N)/V(N)^2 checks are not eroded by
rounding at N = 10^6 scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

#: Euler-Mascheroni constant gamma = lim (sum_{k<=n} 1/k - log n).
EULER_MASCHERONI = 0.5772156649015329

#: Meissel-Mertens constant M = lim (sum_{p<=n} 1/p - loglog n).
MEISSEL_MERTENS = 0.26149721284

#: Validity threshold exponent: the count bound needs N >= exp(exp(HR_EXPONENT/eps)).
HR_EXPONENT = 1.842

#: Density constant in the count bound N(1 - HR_DENSITY/(eps^2 loglog N)).
HR_DENSITY = 85.165

#: Additive constant of the closed-form mean degree 2 log N + c derived from
#: the Dirichlet divisor-sum asymptotic (matches the sieve).
DEGREE_CONSTANT_DIRICHLET = 2.0 * (2.0 * EULER_MASCHERONI - 2.0)

#: Alternative constant 2(2*gamma - 3) that is sometimes quoted for the same
#: estimate; it is off by 2 from the sieve (see dirichlet_degree_estimate).
DEGREE_CONSTANT_ALT = 2.0 * (2.0 * EULER_MASCHERONI - 3.0)


@dataclass(frozen=True)
class TauTable:
    """Divisor counts tau[n] for 1 <= n <= n_max; tau[0] is unused (0)."""

    n_max: int
    tau: np.ndarray

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if len(self.tau) != self.n_max + 1:
            raise ValueError("tau array must have length n_max + 1")


@dataclass(frozen=True)
class PrimeList:
    """Ascending array of all primes <= limit."""

    limit: int
    primes: np.ndarray


def tau_sieve(n_max: int) -> TauTable:
    """Exact divisor counts via harmonic enumeration of multiples, O(N log N)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    tau = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, n_max + 1):
        tau[d::d] += 1
    return TauTable(n_max, tau)


def primes_up_to(limit: int) -> PrimeList:
    """Plain sieve of Eratosthenes; fine up to ~10^8 at desk scale."""
    if limit < 2:
        return PrimeList(limit, np.empty(0, dtype=np.int64))
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return PrimeList(limit, np.nonzero(flags)[0].astype(np.int64))


def first_primes(count: int) -> np.ndarray:
    """The first `count` primes, growing the sieve limit as needed."""
    if count == 0:
        return np.empty(0, dtype=np.int64)
    limit = 16
    if count > 6:
        # p_n < n (log n + loglog n) for n >= 6
        limit = int(count * (math.log(count) + math.log(math.log(count))) + 8)
    while True:
        primes = primes_up_to(limit).primes
        if len(primes) >= count:
            return primes[:count]
        limit *= 2


def count_tau_at_least(table: TauTable, threshold: float) -> int:
    """#{1 <= n <= n_max : tau(n) >= threshold}."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    return int(np.count_nonzero(table.tau[1:] >= threshold))


def divisor_sum_total(table: TauTable) -> int:
    """Sum of tau(n) for n <= n_max; equals |E| + N for the divisor graph."""
    return int(table.tau[1:].sum())


def average_degree(table: TauTable) -> float:
    """Exact mean degree of the divisor graph on 1..n_max: 2(sum tau - N)/N."""
    n = table.n_max
    return 2.0 * (divisor_sum_total(table) - n) / n


def dirichlet_degree_estimate(n: int, constant: float = DEGREE_CONSTANT_DIRICHLET) -> float:
    """Closed-form mean-degree estimate 2 log N + constant.

    Two additive constants are in circulation: DEGREE_CONSTANT_DIRICHLET
    (= 2(2 gamma - 2)), which follows from sum tau(n) = N log N + (2 gamma - 1)N
    + O(sqrt N) and matches the sieve, and DEGREE_CONSTANT_ALT (= 2(2 gamma - 3)),
    which is also quoted but disagrees with the sieve by exactly 2.  Both are
    exposed; the default is the one that matches.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 * math.log(n) + constant


def primorial(d: int) -> int:
    """Product of the first d primes (exact integer); primorial(0) = 1."""
    if d < 0:
        raise ValueError("d must be >= 0")
    result = 1
    for p in first_primes(d).tolist():
        result *= int(p)
    return result


def primorial_count_bound(n: int, divisor_target: float) -> int:
    """Certified lower bound on #{m <= n : tau(m) >= D}: floor(n / p_d#).

    d = ceil(log2(D)); every multiple of the d-th primorial has at least
    2^d >= D divisors.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if divisor_target < 1:
        raise ValueError("divisor target must be >= 1")
    d = max(0, math.ceil(math.log2(divisor_target)))
    return n // primorial(d)


def hr_threshold(epsilon: float) -> float:
    """Validity threshold exp(exp(1.842/eps)); +inf when it overflows a double.

    Comparisons against the threshold should use meets_hr_threshold, which
    works in loglog space and stays decidable even when this overflows.
    """
    _check_epsilon(epsilon)
    try:
        return math.exp(math.exp(HR_EXPONENT / epsilon))
    except OverflowError:
        return math.inf


def hr_threshold_loglog(epsilon: float) -> float:
    """Exact loglog-scale value of the threshold: 1.842/eps."""
    _check_epsilon(epsilon)
    return HR_EXPONENT / epsilon


def meets_hr_threshold(n: int, epsilon: float) -> bool:
    """N >= exp(exp(1.842/eps)), decided as loglog N >= 1.842/eps."""
    _check_epsilon(epsilon)
    if n < 3:
        return False
    return math.log(math.log(n)) >= hr_threshold_loglog(epsilon)


class HRCountBound(NamedTuple):
    value: float
    certified: bool


def hr_count_ratio(loglog_n: float, epsilon: float) -> float:
    """Per-N factor 1 - 85.165/(eps^2 * loglog N), directly in loglog space."""
    _check_epsilon(epsilon)
    if loglog_n <= 0:
        raise ValueError("loglog N must be positive")
    return 1.0 - HR_DENSITY / (epsilon * epsilon * loglog_n)


def hr_count_bound(n: int, epsilon: float) -> HRCountBound:
    """Count bound N(1 - 85.165/(eps^2 loglog N)) on #{m <= N : tau(m) >= log(N)^{log2(1-eps)}}.

    The raw value is returned even when negative (vacuous); `certified` tells
    whether N meets the validity threshold so the bound is actually proven.
    """
    if n < 3:
        raise ValueError("n must be >= 3 so that loglog n is positive")
    ratio = hr_count_ratio(math.log(math.log(n)), epsilon)
    return HRCountBound(n * ratio, meets_hr_threshold(n, epsilon))


def mertens_prime_sum(n: int, primes: PrimeList | None = None) -> float:
    """sum_{p <= n} 1/p, compensated."""
    if n < 2:
        raise ValueError("n must be >= 2")
    primes = _primes_for(n, primes)
    p = primes.primes[primes.primes <= n]
    return math.fsum((1.0 / q) for q in p.tolist())


def mertens_bracket_holds(n: int, primes: PrimeList | None = None) -> bool:
    """Rosser-Schoenfeld bracket for the Mertens sum (valid for all n > 1):

    loglog n + M - 1/(2 log^2 n)  <  sum_{p<=n} 1/p  <  loglog n + M + 1/log^2 n
    """
    s = mertens_prime_sum(n, primes)
    ll = math.log(math.log(n))
    lg2 = math.log(n) ** 2
    return ll + MEISSEL_MERTENS - 0.5 / lg2 < s < ll + MEISSEL_MERTENS + 1.0 / lg2


def _prime_powers(n: int, primes: PrimeList) -> Iterator[tuple[int, int, int]]:
    """(p, k, p^k) for every prime power p^k <= n."""
    for p in primes.primes.tolist():
        if p > n:
            break
        pk = p
        k = 1
        while pk <= n:
            yield p, k, pk
            pk *= p
            k += 1


def E_of_N(n: int, primes: PrimeList | None = None) -> float:
    """E(N) = sum over prime powers p^k <= N of log(k+1)/p^k * (1 - 1/p)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    primes = _primes_for(n, primes)
    return math.fsum(
        math.log(k + 1) / pk * (1.0 - 1.0 / p) for p, k, pk in _prime_powers(n, primes)
    )


def V2_of_N(n: int, primes: PrimeList | None = None) -> float:
    """V(N)^2 = sum over prime powers p^k <= N of log(k+1)^2 / p^k."""
    if n < 2:
        raise ValueError("n must be >= 2")
    primes = _primes_for(n, primes)
    return math.fsum(math.log(k + 1) ** 2 / pk for _, k, pk in _prime_powers(n, primes))


def E_estimate_holds(n: int, primes: PrimeList | None = None) -> bool:
    """Fixed-slack envelope |E(N) - log2 * loglog N| < 1.26 + log2 / log^2 N."""
    log2 = math.log(2.0)
    lhs = abs(E_of_N(n, primes) - log2 * math.log(math.log(n)))
    return lhs < 1.26 + log2 / math.log(n) ** 2


def V2_estimate_holds(n: int, primes: PrimeList | None = None) -> bool:
    """Fixed-slack envelope V(N)^2 < log2^2 * loglog N + 1.47 + log2^2 / log^2 N."""
    log2sq = math.log(2.0) ** 2
    rhs = log2sq * math.log(math.log(n)) + 1.47 + log2sq / math.log(n) ** 2
    return V2_of_N(n, primes) < rhs


def s_e_partial(k_max: int, p_limit: int, primes: PrimeList | None = None) -> float:
    """Partial sum of S_E = sum_{k>=2} sum_p log(k+1)/p^k (1 - 1/p).

    Truncated at k <= k_max and p <= p_limit; monotone nondecreasing in both
    truncation parameters.  Converges to 0.5754215791... (see the frozen
    reference value in the tests).
    """
    return _tail_sum(k_max, p_limit, primes, squared=False)


def s_v_partial(k_max: int, p_limit: int, primes: PrimeList | None = None) -> float:
    """Partial sum of S_V = sum_{k>=2} sum_p log(k+1)^2 / p^k.

    Truncated at k <= k_max and p <= p_limit; converges to 1.3387905893...
    """
    return _tail_sum(k_max, p_limit, primes, squared=True)


def _tail_sum(k_max: int, p_limit: int, primes: PrimeList | None, squared: bool) -> float:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    if p_limit < 2:
        raise ValueError("p_limit must be >= 2")
    primes = _primes_for(p_limit, primes)
    p = primes.primes[primes.primes <= p_limit].astype(np.float64)
    inv = 1.0 / p
    weight = np.ones_like(p) if squared else 1.0 - inv
    pk = inv.copy()
    per_k = []
    for k in range(2, k_max + 1):
        pk = pk * inv  # now p^-k
        coeff = math.log(k + 1) ** 2 if squared else math.log(k + 1)
        per_k.append(coeff * math.fsum((pk * weight).tolist()))
    return math.fsum(per_k)


def sum_inverse_prime_squares(p_limit: int, primes: PrimeList | None = None) -> float:
    """sum_{p <= p_limit} 1/p^2; increases toward the prime zeta value at 2."""
    if p_limit < 2:
        raise ValueError("p_limit must be >= 2")
    primes = _primes_for(p_limit, primes)
    p = primes.primes[primes.primes <= p_limit]
    return math.fsum((1.0 / (q * q)) for q in p.tolist())


def _primes_for(limit: int, primes: PrimeList | None) -> PrimeList:
    if primes is None:
        return primes_up_to(limit)
    if primes.limit < limit:
        raise ValueError(f"prime list only covers <= {primes.limit}, need {limit}")
    return primes


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
