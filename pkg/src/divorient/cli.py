"""Command-line surface: exact polynomials, simulations, bounds, tau stats,
regression fits, and SVG figures.

Conventions shared by every subcommand:

* Determinism: given identical flags (including --seed) a command writes
  byte-identical output, regardless of DIVORIENT_THREADS.
* Diameter convention: the diameter of a sampled orientation is the diameter
  of its largest strongly connected component.
* Seed derivation: sample j of grid cell (n index i_n, rho index i_rho) uses
  the SplitMix64 stream seeded with mix_words(master_seed, i_n, i_rho, j).
* Numeric output uses 17 significant digits (doubles round-trip exactly).
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from collections import Counter

from . import bounds as bnd
from . import numtheory as nt
from . import simulate as sim
from ._util import fmt17
from .exact import (
    DEFAULT_EDGE_LIMIT,
    evaluate,
    exact_expectation_polynomial,
    polynomial_csv_row,
)
from .svgplot import PlotSpec, render_svg

EPILOG = (
    "Determinism: identical flags (and --seed) give byte-identical output. "
    "Diameter convention: largest strongly connected component. "
    "Seed derivation: stream seed of sample j in cell (i_n, i_rho) is "
    "mix_words(master_seed, i_n, i_rho, j) over SplitMix64."
)


def parse_int_grid(text: str) -> tuple[int, ...]:
    """Grid syntax: 'start..stop:step', comma list, or a single integer."""
    text = text.strip()
    if ".." in text:
        head, _, tail = text.partition("..")
        stop_s, _, step_s = tail.partition(":")
        start = int(head)
        stop = int(stop_s)
        step = int(step_s) if step_s else 1
        if step < 1 or stop < start:
            raise ValueError(f"bad grid range {text!r}")
        return tuple(range(start, stop + 1, step))
    return tuple(int(part) for part in text.split(","))


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _write_output(out_path: str | None, payload: str) -> None:
    if out_path is None:
        sys.stdout.write(payload)
    else:
        with open(out_path, "w") as fh:
            fh.write(payload)


def cmd_exact(args: argparse.Namespace) -> int:
    try:
        poly = exact_expectation_polynomial(args.n, edge_limit=args.edge_limit)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [polynomial_csv_row(poly)]
    if args.rho is not None:
        lines.append(f"value at rho={fmt17(args.rho)}: {fmt17(evaluate(poly, args.rho))}")
    _write_output(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_sim(args: argparse.Namespace) -> int:
    statistic = "lscc_size" if args.stat == "lscc" else "diameter"
    if args.paper_scale:
        n_values = sim.SCC_GRID_FULL if statistic == "lscc_size" else sim.DIAMETER_GRID_FULL
        samples = 50 if statistic == "lscc_size" else 10
    else:
        if args.n is not None:
            n_values = parse_int_grid(args.n)
        else:
            n_values = sim.SCC_GRID_DESK if statistic == "lscc_size" else sim.DIAMETER_GRID_DESK
        samples = args.samples
    rho_values = parse_float_list(args.rho) if args.rho else sim.RHO_GRID_DEFAULT
    try:
        config = sim.ExperimentConfig(
            n_values=tuple(n_values),
            rho_values=rho_values,
            samples_per_cell=samples,
            master_seed=args.seed,
            statistic=statistic,
        )
        records = sim.run_grid(config)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    buf = io.StringIO()
    sim.write_csv(records, buf, statistic, args.seed)
    try:
        _write_output(args.out, buf.getvalue())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    try:
        reports = []
        if args.mode in ("theorem1", "all"):
            table = nt.tau_sieve(args.n)
            reports.append(bnd.best_theorem1_bound(table, args.rho))
        if args.mode in ("cor4", "all"):
            if args.epsilon is None:
                raise ValueError("--epsilon is required for the large-N bound")
            reports.append(bnd.corollary4_bound(args.n, args.epsilon, args.rho))
        if args.mode in ("cor5", "all"):
            reports.append(bnd.best_corollary5_bound(args.n, args.rho))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [bnd.BOUND_CSV_COLUMNS] + [r.csv_row() for r in reports]
    _write_output(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_tau(args: argparse.Namespace) -> int:
    lines = []
    if args.n is not None:
        table = nt.tau_sieve(args.n)
        if args.at_least:
            for threshold in args.at_least:
                lines.append(
                    f"count tau >= {fmt17(threshold)}: {nt.count_tau_at_least(table, threshold)}"
                )
        else:
            total = nt.divisor_sum_total(table)
            lines.append(f"n={args.n} sum_tau={total} max_tau={int(table.tau[1:].max())}")
            if args.n <= 50:
                hist = dict(sorted(Counter(table.tau[1:].tolist()).items()))
                lines.append(f"tau histogram {hist}")
            lines.append(f"mean degree (sieve): {fmt17(nt.average_degree(table))}")
            lines.append(
                "mean degree 2logN+2(2g-2): "
                f"{fmt17(nt.dirichlet_degree_estimate(args.n))}"
            )
            lines.append(
                "mean degree 2logN+2(2g-3): "
                f"{fmt17(nt.dirichlet_degree_estimate(args.n, nt.DEGREE_CONSTANT_ALT))}"
            )
            if args.n >= 10:
                lines.append(
                    f"mertens bracket at n={args.n}: "
                    f"{'holds' if nt.mertens_bracket_holds(args.n) else 'VIOLATED'}"
                )
    if args.constants:
        primes = nt.primes_up_to(10**6)
        lines.append(f"S_E partial (k<=60, p<=10^6): {fmt17(nt.s_e_partial(60, 10**6, primes))}")
        lines.append(f"S_V partial (k<=60, p<=10^6): {fmt17(nt.s_v_partial(60, 10**6, primes))}")
        lines.append(f"sum 1/p^2 (p<=10^6): {fmt17(nt.sum_inverse_prime_squares(10**6, primes))}")
        lines.append(f"Meissel-Mertens M: {nt.MEISSEL_MERTENS!r}")
        lines.append(f"Euler-Mascheroni gamma: {nt.EULER_MASCHERONI!r}")
    if not lines:
        print("error: nothing to do (pass --n and/or --constants)", file=sys.stderr)
        return 2
    _write_output(args.out, "\n".join(lines) + "\n")
    return 0


def _read_records(path: str):
    with open(path) as fh:
        return sim.read_csv(fh)


def cmd_fit(args: argparse.Namespace) -> int:
    try:
        _, records = _read_records(args.in_csv)
        selected = [r for r in records if math.isclose(r.rho, args.rho, abs_tol=1e-12)]
        fit = sim.linfit_log(selected)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = f"alpha={fmt17(fit.alpha)} beta={fmt17(fit.beta)} mse={fmt17(fit.mse)}\n"
    _write_output(args.out, payload)
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    try:
        meta, records = _read_records(args.in_csv)
        if not records:
            raise ValueError("no data rows in CSV")
        rhos = sorted({r.rho for r in records})
        spec: PlotSpec
        if args.kind == "scc_ratio":
            series = []
            for rho in rhos:
                pts = [(r.n, r.mean / r.n) for r in records if r.rho == rho]
                series.append((f"rho={rho:g}", sorted(pts)))
            spec = PlotSpec(series, x_label="N", y_label="largest SCC / N")
            if args.bound:
                for rho in rhos:
                    ns = sorted({r.n for r in records if r.rho == rho})
                    curve = [(n, bnd.best_corollary5_bound(n, rho).value / n) for n in ns]
                    spec.overlay_curves.append((f"primorial bound rho={rho:g}", curve))
        else:
            series = []
            for rho in rhos:
                pts = [(math.log(r.n), r.mean) for r in records if r.rho == rho]
                series.append((f"rho={rho:g}", sorted(pts)))
            spec = PlotSpec(series, x_label="log N", y_label="mean diameter")
            if args.fit:
                for rho in rhos:
                    fit = sim.linfit_log([r for r in records if r.rho == rho])
                    spec.overlay_lines.append((fit.alpha, fit.beta))
        svg = render_svg(spec)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with open(args.out, "w") as fh:
        fh.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divorient",
        description="Randomly oriented divisor graphs: exact expectations, "
        "lower bounds, Monte Carlo grids, and figures.",
        epilog=EPILOG,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact expectation polynomial by enumeration", epilog=EPILOG)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, default=None, help="also evaluate at this rho")
    p.add_argument("--edge-limit", type=int, default=DEFAULT_EDGE_LIMIT)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sim", help="Monte Carlo grid over (N, rho)", epilog=EPILOG)
    p.add_argument("--stat", choices=("lscc", "diameter"), required=True)
    p.add_argument("--n", default=None, help="grid: start..stop:step or comma list")
    p.add_argument("--rho", default=None, help="comma list of rho values")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--paper-scale", action="store_true", help="run the full-scale grids")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("bounds", help="lower-bound reports", epilog=EPILOG)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--mode", choices=("theorem1", "cor4", "cor5", "all"), default="all")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tau", help="divisor-function statistics and constants", epilog=EPILOG)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--at-least", type=float, action="append", default=None)
    p.add_argument("--constants", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("fit", help="least squares of mean vs log N", epilog=EPILOG)
    p.add_argument("--in", dest="in_csv", required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("plot", help="SVG scatter plot of a grid CSV", epilog=EPILOG)
    p.add_argument("--in", dest="in_csv", required=True)
    p.add_argument("--kind", choices=("scc_ratio", "diameter"), required=True)
    p.add_argument("--fit", action="store_true", help="overlay fitted line(s)")
    p.add_argument("--bound", action="store_true", help="overlay primorial bound curve(s)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
