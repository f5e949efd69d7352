"""Randomly oriented divisor graphs.

Orient each edge of the divisor graph on {1..N} from the larger label to its
divisor, then reverse every edge independently with probability rho.  This
package computes the expected largest strongly connected component exactly
(small N), estimates it and the diameter by Monte Carlo (large N), and
evaluates the closed-form lower bounds that come from divisor-function
statistics.
"""

from .bounds import (
    BoundReport,
    best_corollary5_bound,
    best_theorem1_bound,
    corollary4_bound,
    corollary5_bound,
    theorem1_bound,
    triangle_prob,
)
from .diameter import (
    all_pairs_diameter,
    ifub_diameter,
    restrict_to_largest_scc,
    sampled_graph_diameter,
    undirected_diameter,
)
from .exact import RhoPolynomial, evaluate, exact_expectation_polynomial
from .graph import (
    Digraph,
    DivisorGraph,
    Orientation,
    SeedSpec,
    build_divisor_graph,
    oriented_adjacency,
    sample_orientation,
)
from .numtheory import (
    PrimeList,
    TauTable,
    count_tau_at_least,
    divisor_sum_total,
    primes_up_to,
    primorial,
    primorial_count_bound,
    tau_sieve,
)
from .scc import (
    ComponentLabeling,
    brute_force_scc,
    largest_scc_size,
    scc_size_of_vertex,
    strongly_connected_components,
)
from .simulate import ExperimentConfig, FitResult, SimRecord, linfit_log, run_grid

__version__ = "0.1.0"
