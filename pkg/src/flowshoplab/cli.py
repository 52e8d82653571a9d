"""``flowshoplab`` command line.

Exit codes: 0 success, 1 usage error, 2 invalid input or infeasible/mismatched
result, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import schedule_fiducial, sweep_fiducial
from .distributions import DistributionSpec
from .experiments import RULES, SweepResult, monte_carlo_sweep, read_sweep_csv, sidecar_path
from .fitting import FitError, fit_curve, fit_makespan_curve
from .gantt import InfeasibleScheduleError, render_gantt
from .percolation import ShapeParams, asymptotic_makespan, lpp, lpp_bruteforce, shape_closed_form
from .tables import TableParseError, read_table

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(v: float):
    v = float(v)
    return int(v) if v.is_integer() else v


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_makespan(args) -> int:
    table = read_table(args.table, header=args.header)
    if args.fiducial is not None:
        sch = schedule_fiducial(table, args.fiducial)
        print(_num(sch.makespan))
    else:
        for nu, t in enumerate(sweep_fiducial(table), start=1):
            print(f"{nu},{_num(t)}")
    return EXIT_OK


def cmd_gantt(args) -> int:
    table = read_table(args.table, header=args.header)
    sch = schedule_fiducial(table, args.fiducial)
    _emit(render_gantt(sch, table, args.format), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = DistributionSpec.from_json(args.dist)
    result = monte_carlo_sweep(spec, args.machines, args.jobs, args.trials, args.seed, args.rule, workers=args.workers)
    if args.out:
        result.save(args.out)
    else:
        sys.stdout.write(result.to_csv())
    return EXIT_OK


def cmd_fit(args) -> int:
    path = Path(args.input)
    if sidecar_path(path).exists():
        fit = fit_makespan_curve(SweepResult.load(path), weighted=args.weighted)
    else:
        nu, mean, _, se = read_sweep_csv(path.read_text())
        weights = 1.0 / se**2 if args.weighted else None
        if weights is not None and np.any(~np.isfinite(weights)):
            raise FitError("inverse-variance weighting needs positive standard errors")
        fit = fit_curve(nu, mean, int(nu.max()), weights=weights)
    _emit(fit.to_json() + "\n", args.out)
    return EXIT_OK


def _shape_params(args) -> ShapeParams:
    if args.kind == "exp":
        if args.q is not None:
            raise UsageError("--q only applies to --kind geo")
        if args.lam is None:
            raise UsageError("--kind exp needs --lambda")
        return ShapeParams.exponential(args.lam)
    if args.q is not None:
        params = ShapeParams.geometric(args.q)
        if args.lam is not None and not np.isclose(args.lam, params.mean, rtol=1e-12):
            raise UsageError(f"--lambda {args.lam} disagrees with --q {args.q} (mean {params.mean})")
        return params
    if args.lam is None:
        raise UsageError("--kind geo needs --q or --lambda")
    return ShapeParams.geometric_from_mean(args.lam)


def cmd_shape(args) -> int:
    print(repr(shape_closed_form(_shape_params(args), args.xi)))
    return EXIT_OK


def cmd_asymptote(args) -> int:
    print(repr(asymptotic_makespan(args.kappa, args.tau, _shape_params(args))))
    return EXIT_OK


def cmd_oracle(args) -> int:
    table = read_table(args.table, header=args.header)
    dp = lpp(table)
    scheduled = schedule_fiducial(table, 1).makespan
    try:
        brute = lpp_bruteforce(table)
    except ValueError as exc:
        brute = None
        note = str(exc)
    report = {"lpp": _num(dp), "scheduler_nu1": _num(scheduled), "bruteforce": None if brute is None else _num(brute)}
    if brute is None:
        report["bruteforce_skipped"] = note
    values = [v for v in (dp, scheduled, brute) if v is not None]
    scale = max(1.0, max(abs(v) for v in values))
    report["agree"] = bool(max(values) - min(values) <= 1e-9 * scale)
    print(json.dumps(report))
    return EXIT_OK if report["agree"] else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flowshoplab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def table_args(sp):
        sp.add_argument("--table", required=True, help="CSV file, one row per machine")
        sp.add_argument("--header", action="store_true", help="skip a header row in the CSV")

    sp = sub.add_parser("makespan", help="makespan for one or all fiducial machines")
    table_args(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--fiducial", type=int)
    g.add_argument("--all", action="store_true", help="every fiducial machine (default)")
    sp.set_defaults(func=cmd_makespan)

    sp = sub.add_parser("gantt", help="render the schedule for a fiducial machine")
    table_args(sp)
    sp.add_argument("--fiducial", type=int, required=True)
    sp.add_argument("--format", choices=("json", "svg", "text"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gantt)

    sp = sub.add_parser("sweep", help="Monte Carlo mean makespan per fiducial machine")
    sp.add_argument("--dist", required=True, help='JSON, e.g. \'{"kind": "exponential", "scale": 2}\'')
    sp.add_argument("--machines", type=int, required=True)
    sp.add_argument("--jobs", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--rule", choices=RULES, default="normal")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="CSV path; metadata goes to <out>.json")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("fit", help="fit the two-term curve to a sweep CSV")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out")
    sp.add_argument("--weighted", action="store_true", help="weight points by 1/stderr^2")
    sp.set_defaults(func=cmd_fit)

    def shape_args(sp):
        sp.add_argument("--kind", choices=("exp", "geo"), required=True)
        sp.add_argument("--lambda", dest="lam", type=float)
        sp.add_argument("--q", type=float)

    sp = sub.add_parser("shape", help="closed-form shape function g(xi, 1)")
    shape_args(sp)
    sp.add_argument("--xi", type=float, required=True)
    sp.set_defaults(func=cmd_shape)

    sp = sub.add_parser("asymptote", help="limit of makespan / N for M = kappa N, nu = tau M")
    shape_args(sp)
    sp.add_argument("--kappa", type=float, required=True)
    sp.add_argument("--tau", type=float, required=True)
    sp.set_defaults(func=cmd_asymptote)

    sp = sub.add_parser("oracle", help="cross-check DP, brute force and scheduler at nu = 1")
    table_args(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "sweep" and args.trials < 1:
        print("flowshoplab: error: --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flowshoplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FitError as exc:
        print(f"flowshoplab: fit failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except FloatingPointError as exc:
        print(f"flowshoplab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (TableParseError, InfeasibleScheduleError, IndexError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"flowshoplab: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
