"""Command-line front end.

Subcommands map one-to-one onto library operations and add no arithmetic of
their own: ``predict`` (conservative worst-case bound), ``survival``
(mixture-model survival, with optional Monte Carlo cross-check),
``bootstrap`` (fleet simulation plus feasibility verdict), ``assess``
(objective-group aggregation) and ``sweep`` (grid of worst-case bounds).

Exit codes: 0 success; 1 a bootstrap verdict failed its threshold; 2 scenario
I/O error; 3 scenario syntax error; 4 validation error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Optional, Sequence

from .assessment import aggregate_fault_freeness
from .fleet import BootstrapTrace, check_feasibility, run_bootstrap
from .inference import posterior_predictive_discrete, sweep, worst_case_survival
from .reliability import MixtureModel, monte_carlo_survival, survival_probability
from .scenario import (
    ScenarioFile,
    ScenarioIOError,
    ScenarioSyntaxError,
    ScenarioValidationError,
    parse_scenario,
)

SWEEP_CSV_HEADER = ["p_nf", "r", "n", "lower_bound", "worst_case_q", "excess_over_floor"]
BOOTSTRAP_CSV_HEADER = [
    "window",
    "fleet_size",
    "window_demands",
    "accumulated_r",
    "lower_bound",
    "worst_case_q",
    "meets_threshold",
]

EXIT_THRESHOLD_MISS = 1
EXIT_IO_ERROR = 2
EXIT_SYNTAX_ERROR = 3
EXIT_VALIDATION_ERROR = 4


def format_probability(p: float) -> str:
    """12 significant digits, plus the distance from 0 or 1 when that close."""
    text = f"{float(p):.12g}"
    if 0.0 < p < 1e-6:
        text += f" (0 + {p:.3g})"
    elif 1.0 - 1e-6 < p < 1.0:
        text += f" (1 - {1.0 - p:.3g})"
    return text


def _load(args: argparse.Namespace) -> Optional[ScenarioFile]:
    if getattr(args, "scenario", None) is None:
        return None
    return parse_scenario(args.scenario)


def _require(value, what: str, hint: str):
    if value is None:
        raise ScenarioValidationError(f"{what} is required; {hint}")
    return value


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def cmd_predict(args: argparse.Namespace) -> int:
    scenario = _load(args)
    if scenario is not None:
        model = _require(scenario.model, "model section", "predict reads p_nf from model")
        evidence = _require(scenario.evidence, "evidence section", "predict needs r")
        query = _require(scenario.query, "query section", "predict needs n or n_grid")
        p_nf, r, n_values = float(model.p_nf), evidence.r, query.values()
        prior = scenario.prior
    else:
        p_nf = _require(args.p_nf, "--p-nf", "pass it inline or use --scenario")
        r = _require(args.r, "--r", "pass it inline or use --scenario")
        n_values = (_require(args.n, "--n", "pass it inline or use --scenario"),)
        prior = None

    print("conservative prediction of failure-free operation")
    print(f"  assessed p_nf : {format_probability(p_nf)}")
    print(f"  evidence r    : {r}")
    for n in n_values:
        pred = worst_case_survival(p_nf, r, n)
        print(f"  n = {n}:")
        print(f"    lower bound       : {format_probability(pred.lower_bound)}")
        print(f"    worst-case q      : {format_probability(pred.worst_case_q)}")
        print(f"    excess over floor : {pred.excess_over_floor:.12g}")
        if prior is not None:
            exact = posterior_predictive_discrete(prior, r, n)
            print(f"    supplied-prior predictive : {format_probability(exact)}")
    return 0


def cmd_survival(args: argparse.Namespace) -> int:
    scenario = _load(args)
    if scenario is not None:
        model_section = _require(scenario.model, "model section", "survival needs the mixture model")
        model = model_section.mixture()
        query = _require(scenario.query, "query section", "survival needs n or n_grid")
        n_values = query.values()
    else:
        p_nf = _require(args.p_nf, "--p-nf", "pass it inline or use --scenario")
        p_fail = _require(args.p_fail, "--p-fail", "pass it inline or use --scenario")
        model = MixtureModel(p_nf=p_nf, p_f_given_faulty=p_fail)
        n_values = (_require(args.n, "--n", "pass it inline or use --scenario"),)

    print("survival probability under the two-component model")
    print(f"  p_nf             : {format_probability(model.p_nf)}")
    print(f"  p_f_given_faulty : {format_probability(model.p_f_given_faulty)}")
    for n in n_values:
        value = survival_probability(model, n)
        print(f"  n = {n}: {format_probability(value)}")
        if args.mc_trials:
            mc = monte_carlo_survival(model, n, trials=args.mc_trials, seed=args.seed)
            print(
                f"    monte carlo ({mc.trials} trials, seed {mc.seed}): "
                f"{format_probability(mc.estimate)} +/- {mc.standard_error:.3g}"
            )
    return 0


def _print_trace(trace: BootstrapTrace) -> None:
    print(f"{'window':>6} {'fleet':>8} {'demands':>12} {'r_before':>14} "
          f"{'lower_bound':>18} {'meets':>6}")
    for w in trace.windows:
        print(
            f"{w.window_index:>6} {w.fleet_size:>8} {w.window_demands:>12} "
            f"{w.accumulated_evidence:>14} {float(w.prediction.lower_bound):>18.12f} "
            f"{'yes' if w.meets_threshold else 'NO':>6}"
        )


def cmd_bootstrap(args: argparse.Namespace) -> int:
    scenario = parse_scenario(args.scenario)
    fleet = _require(scenario.bootstrap, "bootstrap section", "the scenario must define the fleet run")
    trace = run_bootstrap(fleet)
    verdict = check_feasibility(trace)

    print("fleet bootstrap run")
    print(f"  threshold           : {format_probability(trace.threshold)}")
    print(f"  cumulative demands  : {trace.cumulative_demands}")
    _print_trace(trace)
    if verdict.all_windows_pass:
        margin = "n/a" if verdict.minimum_margin is None else f"{verdict.minimum_margin:.12g}"
        print(f"verdict: all windows meet the threshold (minimum margin {margin})")
    else:
        print(f"verdict: window {verdict.first_failing_window} misses the threshold")

    if args.csv:
        rows = [
            [
                w.window_index,
                w.fleet_size,
                w.window_demands,
                w.accumulated_evidence,
                repr(float(w.prediction.lower_bound)),
                repr(float(w.prediction.worst_case_q)),
                "true" if w.meets_threshold else "false",
            ]
            for w in trace.windows
        ]
        _write_csv(args.csv, BOOTSTRAP_CSV_HEADER, rows)
        print(f"wrote {args.csv}")
    return 0 if verdict.all_windows_pass else EXIT_THRESHOLD_MISS


def cmd_assess(args: argparse.Namespace) -> int:
    scenario = parse_scenario(args.scenario)
    spec = _require(scenario.assessment, "assessment section", "assess needs objective groups")
    result = aggregate_fault_freeness(spec.groups, spec.mode)
    objectives = sum(g.objective_count for g in spec.groups)
    print(f"assessed groups   : {len(spec.groups)} ({objectives} objectives)")
    for g in spec.groups:
        print(f"  {g.group_id:<12} p_no_fault = {format_probability(g.p_no_fault)}")
    print(f"aggregation mode  : {spec.mode}")
    print(f"whole-standard p_nf: {format_probability(result)}")
    return 0


def _comma_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part != ""]


def _comma_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part != ""]


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _load(args)
    if scenario is not None:
        grids = _require(scenario.sweep, "sweep section", "the scenario must define the grids")
        p_nf_grid, r_grid, n_grid = list(grids.p_nf), list(grids.r), list(grids.n)
    else:
        p_nf_grid = _require(args.p_nf, "--p-nf", "comma-separated list, or use --scenario")
        r_grid = _require(args.r, "--r", "comma-separated list, or use --scenario")
        n_grid = _require(args.n, "--n", "comma-separated list, or use --scenario")

    rows = sweep(p_nf_grid, r_grid, n_grid)
    print(f"{'p_nf':>10} {'r':>12} {'n':>12} {'lower_bound':>18} {'worst_case_q':>14} {'excess':>12}")
    for row in rows:
        print(
            f"{row.p_nf:>10.6g} {row.r:>12} {row.n:>12} {row.lower_bound:>18.12f} "
            f"{row.worst_case_q:>14.6g} {row.excess_over_floor:>12.6g}"
        )
    if args.csv:
        _write_csv(
            args.csv,
            SWEEP_CSV_HEADER,
            [
                [
                    repr(row.p_nf),
                    row.r,
                    row.n,
                    repr(row.lower_bound),
                    repr(row.worst_case_q),
                    repr(row.excess_over_floor),
                ]
                for row in rows
            ],
        )
        print(f"wrote {args.csv}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="certbound",
        description="Conservative survival bounds for software certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="worst-case conservative bound from p_nf, r and n")
    p.add_argument("--scenario", help="scenario file (model, evidence, query sections)")
    p.add_argument("--p-nf", dest="p_nf", type=float, help="assessed fault-freeness probability")
    p.add_argument("--r", type=int, help="observed failure-free demands")
    p.add_argument("--n", type=int, help="future demands to predict over")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("survival", help="mixture-model survival probability")
    p.add_argument("--scenario", help="scenario file (model, query sections)")
    p.add_argument("--p-nf", dest="p_nf", type=float, help="fault-freeness probability")
    p.add_argument("--p-fail", dest="p_fail", type=float, help="per-demand failure probability if faulty")
    p.add_argument("--n", type=int, help="number of demands")
    p.add_argument("--mc-trials", dest="mc_trials", type=int, default=0,
                   help="also run a Monte Carlo cross-check with this many trials")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    p.set_defaults(func=cmd_survival)

    p = sub.add_parser("bootstrap", help="run a fleet bootstrap scenario")
    p.add_argument("--scenario", required=True, help="scenario file with a bootstrap section")
    p.add_argument("--csv", help="write the per-window trace to this CSV file")
    p.set_defaults(func=cmd_bootstrap)

    p = sub.add_parser("assess", help="aggregate objective-group judgments into p_nf")
    p.add_argument("--scenario", required=True, help="scenario file with an assessment section")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("sweep", help="worst-case bounds over a grid of p_nf, r, n")
    p.add_argument("--scenario", help="scenario file with a sweep section")
    p.add_argument("--p-nf", dest="p_nf", type=_comma_floats, help="comma-separated p_nf values")
    p.add_argument("--r", type=_comma_ints, help="comma-separated r values")
    p.add_argument("--n", type=_comma_ints, help="comma-separated n values")
    p.add_argument("--csv", help="write the sweep table to this CSV file")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    except ScenarioSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX_ERROR
    except (ScenarioValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
