"""Command-line front end.

Subcommands:
  state        print a state's amplitudes (json) or photon-number bars (csv)
  dist         sample the relative phase distribution on a uniform grid
  fisher       one-line comparison of F_Q against the phase-distribution
               Fisher information
  sweep        the same comparison over a range of photon numbers
  compare-all  run the default sweep for every family and write per-family
               data files plus a summary table

Exit codes: 0 success, 1 invalid arguments, 2 numerical non-convergence,
3 partial sweep failure (some rows failed, the rest were written).

All output is deterministic: identical flags give byte-identical bytes on
stdout.  Numbers are printed with 12 significant digits.  Progress and
per-row failure notes go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from .errors import LssPhaseError, NonConvergenceError
from .fisher import (
    FISHER_CSV_HEADER,
    DEFAULT_TOL,
    FisherReport,
    compute_report,
)
from .phasedist import PhaseDistribution, uncertainty_product
from .states import (
    CorrelatedFock,
    FockOneInput,
    Noon,
    PhaseState,
    Regime,
    SqueezedCoherent,
    StateSpec,
    TwinFock,
    build_state,
    family_name,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NONCONVERGENCE = 2
EXIT_PARTIAL = 3

FAMILIES = ("fock", "noon", "phase", "twin-fock", "correlated", "sq-coh")

SUMMARY_CSV_HEADER = (
    "family,n_min,n_max,mean_rel_diff_percent,min_uncertainty_product"
)

# Default sweep ranges per family tag: (n_min, n_max, step).  General ranges
# stop at 40; the sqrt-shot regime starts at 20 and runs to 60 so that the
# power-law fit sees the large-mean region.
_DEFAULT_RANGES = {
    "fock": (2, 40, 1),
    "noon": (1, 40, 1),
    "phase": (1, 40, 1),
    "twin-fock": (2, 40, 2),
    "correlated": (1, 39, 2),
    "sq-coh-optimal": (2, 40, 1),
    "sq-coh-sqrt-shot": (20, 60, 1),
}


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


def _fmt(x: float) -> str:
    return "%.12g" % x


def _spec_from_args(args) -> StateSpec:
    family = args.family
    if family == "sq-coh":
        if args.n_bar is None:
            raise ValueError("--n-bar is required for family sq-coh")
        return SqueezedCoherent(args.n_bar, Regime(args.regime))
    if args.n is None:
        raise ValueError("--n is required for family %s" % family)
    if family == "fock":
        return FockOneInput(args.n)
    if family == "noon":
        return Noon(args.n)
    if family == "phase":
        return PhaseState(args.n, args.phi0)
    if family == "twin-fock":
        return TwinFock(args.n)
    if family == "correlated":
        return CorrelatedFock(args.n)
    raise ValueError("unknown family %r" % family)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand bodies


def cmd_state(args) -> int:
    spec = _spec_from_args(args)
    state = build_state(spec)
    if args.format == "json":
        text = state.to_json() + "\n"
    else:
        lines = ["k,prob"]
        for k, prob in enumerate(state.probabilities()):
            lines.append("%d,%s" % (k, _fmt(prob)))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_dist(args) -> int:
    if args.m_points < 2:
        raise ValueError("-m must be >= 2")
    spec = _spec_from_args(args)
    state = build_state(spec)
    phi, p, _ = PhaseDistribution(state).grid(args.m_points)
    if args.format == "json":
        rows = [{"phi": a, "p": b} for a, b in zip(phi.tolist(), p.tolist())]
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = ["phi,p"]
        for a, b in zip(phi, p):
            lines.append("%s,%s" % (_fmt(a), _fmt(b)))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_fisher(args) -> int:
    spec = _spec_from_args(args)
    report = compute_report(spec, tol=args.tol)
    if args.format == "json":
        text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    else:
        text = FISHER_CSV_HEADER + "\n" + report.to_csv_row() + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _family_tag(args) -> str:
    if args.family == "sq-coh":
        return "sq-coh-" + args.regime
    return args.family


def _sweep_specs(
    tag: str, n_min: int, n_max: int, step: int
) -> List[StateSpec]:
    if n_min > n_max or step < 1:
        raise ValueError("need n_min <= n_max and step >= 1")
    ns = range(n_min, n_max + 1, step)
    if tag == "fock":
        return [FockOneInput(n) for n in ns]
    if tag == "noon":
        return [Noon(n) for n in ns]
    if tag == "phase":
        return [PhaseState(n) for n in ns]
    if tag == "twin-fock":
        return [TwinFock(n) for n in ns]
    if tag == "correlated":
        return [CorrelatedFock(n) for n in ns]
    if tag == "sq-coh-optimal":
        return [SqueezedCoherent(n, Regime.OPTIMAL) for n in ns]
    if tag == "sq-coh-sqrt-shot":
        return [SqueezedCoherent(n, Regime.SQRT_SHOT) for n in ns]
    raise ValueError("unknown family tag %r" % tag)


def _sweep_worker(job: Tuple[StateSpec, float]) -> Tuple[FisherReport, float]:
    """Report plus uncertainty product for one spec; runs in worker processes."""
    spec, tol = job
    state = build_state(spec)
    report = compute_report(spec, state=state, tol=tol)
    return report, uncertainty_product(state)


def _run_sweep(
    specs: Sequence[StateSpec], tol: float, jobs: int
) -> Tuple[List[Optional[Tuple[FisherReport, float]]], List[str]]:
    """Evaluate every spec; failed rows become None plus a note.

    Results keep the input order regardless of worker completion order.
    """
    results: List[Optional[Tuple[FisherReport, float]]] = [None] * len(specs)
    notes: List[str] = []
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_sweep_worker, (s, tol)) for s in specs]
            for i, fut in enumerate(futures):
                try:
                    results[i] = fut.result()
                except (NonConvergenceError, LssPhaseError, ValueError) as exc:
                    notes.append("row %r failed: %s" % (specs[i], exc))
    else:
        for i, spec in enumerate(specs):
            try:
                results[i] = _sweep_worker((spec, tol))
            except (NonConvergenceError, LssPhaseError, ValueError) as exc:
                notes.append("row %r failed: %s" % (spec, exc))
    return results, notes


def _sweep_table_text(
    tag: str,
    results: Sequence[Optional[Tuple[FisherReport, float]]],
    output_format: str,
) -> str:
    rows = [r[0] for r in results if r is not None]
    mean_pct = (
        100.0 * sum(r.rel_diff for r in rows) / len(rows) if rows else float("nan")
    )
    if output_format == "json":
        return (
            json.dumps(
                {
                    "family": tag,
                    "rows": [r.to_json_dict() for r in rows],
                    "mean_rel_diff_percent": mean_pct,
                },
                indent=2,
            )
            + "\n"
        )
    lines = [FISHER_CSV_HEADER]
    lines.extend(r.to_csv_row() for r in rows)
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    tag = _family_tag(args)
    default = _DEFAULT_RANGES[tag]
    n_min = default[0] if args.n_min is None else args.n_min
    n_max = default[1] if args.n_max is None else args.n_max
    step = default[2] if args.step is None else args.step
    specs = _sweep_specs(tag, n_min, n_max, step)
    results, notes = _run_sweep(specs, args.tol, args.jobs)
    for note in notes:
        sys.stderr.write(note + "\n")
    done = [r[0] for r in results if r is not None]
    if done:
        mean_pct = 100.0 * sum(r.rel_diff for r in done) / len(done)
        sys.stderr.write(
            "%s: %d/%d rows, mean_rel_diff_percent=%s\n"
            % (tag, len(done), len(specs), _fmt(mean_pct))
        )
    _emit(_sweep_table_text(tag, results, args.format), args.out)
    if not done:
        return EXIT_NONCONVERGENCE
    return EXIT_PARTIAL if notes else EXIT_OK


# Representative photon number for the per-family coefficient and
# distribution files written by compare-all (odd where parity demands it).
_BUNDLE_N = {
    "fock": 10,
    "noon": 10,
    "phase": 10,
    "twin-fock": 10,
    "correlated": 11,
    "sq-coh-optimal": 10,
    "sq-coh-sqrt-shot": 20,
}


def _bundle_spec(tag: str, n: int) -> StateSpec:
    return _sweep_specs(tag, n, n, 1)[0]


def cmd_compare_all(args) -> int:
    out_dir = args.out or "compare-all-output"
    os.makedirs(out_dir, exist_ok=True)
    summary_lines = [SUMMARY_CSV_HEADER]
    partial = False
    any_done = False
    for tag, (n_min, n_max, step) in _DEFAULT_RANGES.items():
        specs = _sweep_specs(tag, n_min, n_max, step)
        results, notes = _run_sweep(specs, args.tol, args.jobs)
        for note in notes:
            sys.stderr.write("%s: %s\n" % (tag, note))
        done = [r for r in results if r is not None]
        if notes:
            partial = True
        if not done:
            sys.stderr.write("%s: no rows completed, skipping\n" % tag)
            continue
        any_done = True

        with open(os.path.join(out_dir, "%s_sweep.csv" % tag), "w") as fh:
            fh.write(_sweep_table_text(tag, results, "csv"))

        n0 = _BUNDLE_N[tag]
        state = build_state(_bundle_spec(tag, n0))
        with open(os.path.join(out_dir, "%s_coefficients.csv" % tag), "w") as fh:
            fh.write("k,prob\n")
            for k, prob in enumerate(state.probabilities()):
                fh.write("%d,%s\n" % (k, _fmt(prob)))
        phi, p, _ = PhaseDistribution(state).grid(1024)
        with open(os.path.join(out_dir, "%s_distribution.csv" % tag), "w") as fh:
            fh.write("phi,p\n")
            for a, b in zip(phi, p):
                fh.write("%s,%s\n" % (_fmt(a), _fmt(b)))

        mean_pct = 100.0 * sum(r.rel_diff for r, _ in done) / len(done)
        min_uprod = min(u for _, u in done)
        summary_lines.append(
            "%s,%d,%d,%s,%s"
            % (tag, n_min, n_max, _fmt(mean_pct), _fmt(min_uprod))
        )
    summary = "\n".join(summary_lines) + "\n"
    with open(os.path.join(out_dir, "summary.csv"), "w") as fh:
        fh.write(summary)
    sys.stdout.write(summary)
    if not any_done:
        return EXIT_NONCONVERGENCE
    return EXIT_PARTIAL if partial else EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=["csv", "json"], default="csv",
        help="output format (default: csv)",
    )
    common.add_argument(
        "--tol", type=float, default=DEFAULT_TOL,
        help="quadrature tolerance (default: %g)" % DEFAULT_TOL,
    )
    common.add_argument(
        "--jobs", type=int, default=1,
        help="worker processes for sweeps (default: 1)",
    )
    common.add_argument(
        "--out", default=None,
        help="output file (or directory for compare-all); default stdout",
    )

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument(
        "--family", choices=FAMILIES, required=True,
        help="input state family",
    )
    family.add_argument("--n", type=int, default=None, help="total photon number")
    family.add_argument(
        "--n-bar", type=int, default=None,
        help="mean photon number before projection (sq-coh only)",
    )
    family.add_argument(
        "--regime", choices=["optimal", "sqrt-shot"], default="optimal",
        help="squeezing regime for sq-coh (default: optimal)",
    )
    family.add_argument(
        "--phi0", type=float, default=0.0,
        help="linear phase offset for the phase family (default: 0)",
    )

    parser = _Parser(
        prog="lssphase",
        description="Relative phase distributions and Fisher information "
        "for two-mode photonic states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "state", parents=[common, family],
        help="print amplitudes or photon-number probabilities",
    )
    p.set_defaults(func=cmd_state)

    p = sub.add_parser(
        "dist", parents=[common, family],
        help="sample the relative phase distribution",
    )
    p.add_argument(
        "-m", "--m-points", type=int, default=1024,
        help="grid points over one period (default: 1024)",
    )
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser(
        "fisher", parents=[common, family],
        help="compare F_Q with the phase-distribution Fisher information",
    )
    p.set_defaults(func=cmd_fisher)

    p = sub.add_parser(
        "sweep", parents=[common, family],
        help="run the Fisher comparison over a photon-number range",
    )
    p.add_argument("--n-min", type=int, default=None, help="sweep start")
    p.add_argument("--n-max", type=int, default=None, help="sweep end, inclusive")
    p.add_argument("--step", type=int, default=None, help="sweep stride")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "compare-all", parents=[common],
        help="default sweep for every family plus a summary table",
    )
    p.set_defaults(func=cmd_compare_all)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return EXIT_OK if code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        sys.stderr.write("non-convergence: %s\n" % exc)
        return EXIT_NONCONVERGENCE
    except (LssPhaseError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
