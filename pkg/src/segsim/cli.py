"""Command line front end.

Subcommands: compare (one segment pair, JSON pair report), experiment
(two sets of X years against one Y year, JSON or plain-text report;
--fixtures replays the bundled result tables instead of computing),
fixtures (bundled table as CSV), classify (decline/rise label for a
year), generate (deterministic synthetic series as CSV).

Exit codes: 0 success, 2 bad input, 1 a computation that could not be
carried out on valid-looking input.  Errors print exactly one
"Code: message" line to stderr.
"""

import argparse
import json
import sys

from .errors import InputError, SegsimError
from .experiment import (
    ExperimentConfig,
    compare_years,
    pair_report_dict,
    render_json,
    render_table,
    report_dict,
    run_experiment,
    run_fixture_experiment,
)
from .io import SyntheticSpec, fixture_csv, generate, read_csv, write_csv
from .series import classify_year

_PERCENTILE_FLAG = {"paper": "paper_range", "data": "data_percentile"}


def _add_measure_flags(parser):
    parser.add_argument("--tolerance", type=float, default=0.3,
                        help="property match tolerance (default 0.3)")
    parser.add_argument("--dtw", choices=("exact", "fast"), default="exact",
                        help="warping distance algorithm (default exact)")
    parser.add_argument("--radius", type=int, default=1,
                        help="window radius for --dtw fast (default 1)")
    parser.add_argument("--f-mode", choices=("greedy", "exact"),
                        default="greedy",
                        help="subsequence cover selection (default greedy)")
    parser.add_argument("--percentile-mode", choices=("paper", "data"),
                        default="paper",
                        help="quartile definition: range interpolation or "
                             "order statistics (default paper)")


def _config(args, jobs=1):
    if args.tolerance < 0.0:
        raise InputError("tolerance must be nonnegative")
    if args.radius < 0:
        raise InputError("radius must be non-negative")
    if jobs < 1:
        raise InputError("jobs must be at least 1")
    return ExperimentConfig(
        tolerance=args.tolerance,
        percentile_mode=_PERCENTILE_FLAG[args.percentile_mode],
        f_mode=args.f_mode,
        dtw_mode=args.dtw,
        radius=args.radius,
        jobs=jobs,
    )


def _year_list(text):
    try:
        years = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated years, got {text!r}")
    if not years:
        raise InputError("year list is empty")
    return years


def _cmd_compare(args):
    series = read_csv(args.input)
    pair = compare_years(series, args.x_year, args.y_year, _config(args))
    sys.stdout.write(render_json(pair_report_dict(pair)))
    return 0


def _cmd_experiment(args):
    if args.fixtures:
        report = run_fixture_experiment()
    else:
        if args.input is None or args.y_year is None \
                or args.set_one is None or args.set_two is None:
            raise InputError(
                "experiment needs --input, --y-year, --set-one and --set-two "
                "(or --fixtures)"
            )
        series = read_csv(args.input)
        report = run_experiment(
            series, args.y_year,
            _year_list(args.set_one), _year_list(args.set_two),
            _config(args, jobs=args.jobs),
        )
    if args.format == "table":
        sys.stdout.write(render_table(report))
    else:
        sys.stdout.write(render_json(report_dict(report)))
    return 0


def _cmd_fixtures(args):
    sys.stdout.write(fixture_csv(args.table))
    return 0


def _cmd_classify(args):
    series = read_csv(args.input)
    label, change_pct = classify_year(series, args.year)
    payload = {"year": args.year, "label": label,
               "change_pct": round(float(change_pct), 2)}
    sys.stdout.write(json.dumps(payload) + "\n")
    return 0


def _cmd_generate(args):
    spec = SyntheticSpec(
        length=args.length, seed=args.seed, drift=args.drift,
        volatility=args.volatility, base=args.base,
        start_year=args.start_year, years=args.years,
    )
    write_csv(generate(spec), sys.stdout)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fc", description="segment similarity measures for time series"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="all measures for one year pair")
    p.add_argument("--input", required=True, help="fractiondate CSV path")
    p.add_argument("--x-year", type=int, required=True)
    p.add_argument("--y-year", type=int, required=True)
    _add_measure_flags(p)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("experiment",
                       help="two test sets against one subject year")
    p.add_argument("--input", help="fractiondate CSV path")
    p.add_argument("--y-year", type=int)
    p.add_argument("--set-one", help="comma-separated X years")
    p.add_argument("--set-two", help="comma-separated X years")
    p.add_argument("--fixtures", action="store_true",
                   help="replay the bundled result tables instead")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel pair workers (default 1)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    _add_measure_flags(p)
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("fixtures", help="bundled result table as CSV")
    p.add_argument("--table", required=True, choices=("1", "3"))
    p.set_defaults(handler=_cmd_fixtures)

    p = sub.add_parser("classify", help="decline/rise label for a year")
    p.add_argument("--input", required=True, help="fractiondate CSV path")
    p.add_argument("--year", type=int, required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("generate", help="synthetic series as CSV")
    p.add_argument("--length", type=int, required=True,
                   help="points per year")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--drift", type=float, default=0.0)
    p.add_argument("--volatility", type=float, default=0.0)
    p.add_argument("--base", type=float, default=100.0)
    p.add_argument("--start-year", type=int, default=2000)
    p.add_argument("--years", type=int, default=1)
    p.set_defaults(handler=_cmd_generate)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SegsimError as err:
        sys.stderr.write(f"{err.code}: {err}\n")
        return 2 if isinstance(err, InputError) else 1
    except ValueError as err:
        # config validation outside the error hierarchy: still bad input
        sys.stderr.write(f"InputError: {err}\n")
        return 2
    except OSError as err:
        sys.stderr.write(f"InputError: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
