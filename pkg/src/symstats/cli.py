"""Command-line interface.

Exit status: 0 on success, 1 on usage errors (bad flags, unknown variable,
out-of-range arguments), 2 on data errors (unreadable or invalid dataset,
estimator not applicable to the data).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from .bivariate import Estimator, covariance
from .diagnostics import MAX_SPLITS, Side, check_problem1, refinement_experiment
from .errors import SymbolicDataError, ZeroVarianceError
from .fileio import load_dataset
from .model import HISTOGRAM, quantile
from .univariate import variance_decomposition

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

FORMATS = ("table", "csv", "json-lines")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def fmt_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _json_value(x):
    if isinstance(x, float):
        return float(format(x, ".12g")) if math.isfinite(x) else None
    return x


def render(rows: list[dict], fmt: str) -> str:
    if not rows:
        return ""
    columns = list(rows[0])
    if fmt == "json-lines":
        return "".join(
            json.dumps({k: _json_value(r[k]) for k in columns}) + "\n" for r in rows
        )
    cells = [[fmt_number(r[k]) for k in columns] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max(len(c), *(len(row[j]) for row in cells)) for j, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _variable(ds, name):
    if name not in ds:
        raise UsageError(f"unknown variable {name!r}; available: {', '.join(ds.names)}")
    return ds[name]


def _cmd_stats(ds, args):
    names = [args.var] if args.var else ds.names
    rows = []
    for name in names:
        v = _variable(ds, name)
        rep = variance_decomposition(v)
        rows.append(
            {
                "variable": name,
                "kind": v.kind,
                "n": rep.n,
                "mean": rep.mean,
                "variance": rep.variance,
                "ssw": rep.ssw,
                "ssb": rep.ssb,
                "sst": rep.sst,
            }
        )
    return rows


def _cmd_cov(ds, args):
    x, y = _variable(ds, args.x), _variable(ds, args.y)
    rep = covariance(x, y, args.estimator)
    try:
        corr = rep.correlation
    except ZeroVarianceError:
        corr = None
    return [
        {
            "x": args.x,
            "y": args.y,
            "estimator": rep.estimator.value,
            "n": rep.n,
            "csw": rep.csw,
            "csb": rep.csb,
            "cst": rep.cst,
            "covariance": rep.covariance,
            "correlation": corr,
            "correlation_out_of_range": rep.correlation_out_of_range,
        }
    ]


def _cmd_quantile(ds, args):
    v = _variable(ds, args.var)
    if v.kind != HISTOGRAM:
        raise SymbolicDataError(f"variable {args.var!r} is not histogram-valued")
    if not 1 <= args.unit <= v.n:
        raise UsageError(f"--unit must be between 1 and {v.n}")
    if not 0.0 <= args.t <= 1.0:
        raise UsageError("--t must lie in [0, 1]")
    value = quantile(v.cells[args.unit - 1], args.t)
    return [{"variable": args.var, "unit": args.unit, "t": args.t, "quantile": value}]


def _cmd_refine(ds, args):
    x, y = _variable(ds, args.x), _variable(ds, args.y)
    if not 0 <= args.splits <= MAX_SPLITS:
        raise UsageError(f"--splits must be between 0 and {MAX_SPLITS}")
    trace = refinement_experiment(x, y, args.splits, side=args.side)
    return [
        {
            "k": s.k,
            "bins_x": s.bins[0],
            "bins_y": s.bins[1],
            "cov": s.cov,
            "cov_means": s.cov_means,
            "gap": s.gap,
            "mean_x": s.means[0],
            "mean_y": s.means[1],
            "variance_x": s.variances[0],
            "variance_y": s.variances[1],
        }
        for s in trace.steps
    ]


def _cmd_diagnose(ds, args):
    v = _variable(ds, args.var)
    rep = check_problem1(v, args.estimator)
    return [
        {
            "variable": args.var,
            "estimator": rep.estimator.value,
            "variance1": rep.variance1,
            "variance2": rep.variance2,
            "cst": rep.cst,
            "n_times_variance": rep.n_times_variance,
            "discrepancy": rep.discrepancy,
        }
    ]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("file", help="dataset file or bundled example (ex_pulse, ex1, ex2)")
    common.add_argument("--format", choices=FORMATS, default="table")

    parser = _Parser(prog="symstats", description="Statistics for interval and histogram data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    estimators = [e.value for e in Estimator]

    p = sub.add_parser("stats", parents=[common], help="univariate statistics per variable")
    p.add_argument("--var")
    p.set_defaults(handler=_cmd_stats)

    p = sub.add_parser("cov", parents=[common], help="covariance between two variables")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--estimator", choices=estimators, required=True)
    p.set_defaults(handler=_cmd_cov)

    p = sub.add_parser("quantile", parents=[common], help="quantile of one histogram cell")
    p.add_argument("--var", required=True)
    p.add_argument("--unit", type=int, required=True, help="1-based unit index")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(handler=_cmd_quantile)

    p = sub.add_parser("refine", parents=[common], help="bin-bisection experiment")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--splits", type=int, required=True)
    p.add_argument("--side", choices=[s.value for s in Side], default=Side.BOTH.value)
    p.set_defaults(handler=_cmd_refine)

    p = sub.add_parser("diagnose", parents=[common], help="covariance of a variable with itself")
    p.add_argument("--var", required=True)
    p.add_argument("--estimator", choices=estimators, required=True)
    p.set_defaults(handler=_cmd_diagnose)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=stderr)
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    try:
        ds = load_dataset(args.file)
        rows = args.handler(ds, args)
    except UsageError as exc:
        print(f"symstats: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (SymbolicDataError, OSError, ArithmeticError) as exc:
        print(f"symstats: data error: {exc}", file=stderr)
        return EXIT_DATA
    stdout.write(render(rows, args.format))
    return EXIT_OK


@dataclass(frozen=True)
class CliResult:
    status: int
    stdout: str
    stderr: str


def run_cli(argv: list[str]) -> CliResult:
    """Run the CLI in-process, capturing its output streams."""
    out, err = io.StringIO(), io.StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err  # argparse --help writes to sys.stdout
    try:
        status = main(argv, stdout=out, stderr=err)
    finally:
        sys.stdout, sys.stderr = old_out, old_err
    return CliResult(status, out.getvalue(), err.getvalue())


if __name__ == "__main__":
    sys.exit(main())
