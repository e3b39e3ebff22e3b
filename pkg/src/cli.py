"""
Command-line front end.

Subcommands:

    enclose   EnclosureReport as one JSON line (--split: both one-sided pieces for odd k)
    compare   sharp vs. baseline intervals and their width ratio (JSON)
    verify    grid audit of the enclosure (JSON)
    ratio     width-ratio series on shrinking regions (CSV)
    mm        MM trace (CSV)
    plotdata  x, f, lower, upper at --n points (CSV)

Exit status: 0 on success, 2 on usage errors (bad flags, unknown
functions, malformed grammar, invalid arguments), 1 on other library
errors. Errors are reported as one JSON line {"error": kind, "message": ...}
on stderr.

Examples:
    python src/main.py enclose --f exp --k 2 --x0 0.5 --region 0,2
    python src/main.py plotdata --f "lincomb:[(1.5,exp,3,0)]+poly:[0,0,-25]" --k 2 --x0 0.5 --region 0,1 --n 200
"""

import argparse
import logging
import math
import sys
from typing import Callable, Dict, List, Optional, TextIO

import numpy as np

from catalog import FunctionDescriptor, parse_function
from enclosure import (
    TaylorEnclosure,
    enclose,
    enclose_split,
    enclosure_bounds,
    split_bounds,
)
from errors import EnclosureError, InvalidArgumentError
from interval import Interval
from mm_optimizer import mm_minimize
from oracle import verify_enclosure, width_ratio_series
from reporting import csv_text, dumps_json

logger = logging.getLogger(__name__)


# Flag types


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{text}'")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got '{text}'")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got '{text}'")
    return value


def _region(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got '{text}'")
    lo, hi = (_finite_float(p.strip()) for p in parts)
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"expected lo < hi, got '{text}'")
    return Interval(lo, hi)


def _float_list(text: str) -> List[float]:
    values = [_finite_float(p.strip()) for p in text.split(",") if p.strip()]
    if not values:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharp-taylor",
        description="Sharp Taylor polynomial enclosures for one-dimensional functions.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, region: bool = True, k: bool = True) -> None:
        p.add_argument("--f", required=True, help="Function spec, e.g. exp, pow:0.5, lincomb:[(1,exp,-1,0)]")
        if k:
            p.add_argument("--k", type=_positive_int, default=2, help="Enclosure degree (default: 2)")
        p.add_argument("--x0", type=_finite_float, required=True, help="Expansion point / start point")
        if region:
            p.add_argument("--region", type=_region, required=True, help="Trust region as lo,hi")
        p.add_argument("--out", default=None, help="Output path (default: standard output)")

    p = subparsers.add_parser("enclose", help="Compute an enclosure report (JSON)")
    add_common(p)
    p.add_argument("--split", action="store_true", help="Separate enclosures left and right of x0 (odd k)")

    p = subparsers.add_parser("compare", help="Compare sharp and baseline intervals (JSON)")
    add_common(p)

    p = subparsers.add_parser("verify", help="Audit an enclosure on a grid (JSON)")
    add_common(p)
    p.add_argument("--n", type=_positive_int, default=None, help="Audit grid size (default: Settings.audit_grid_size)")

    p = subparsers.add_parser("ratio", help="Width-ratio series on [x0, x0 + eps] (CSV)")
    add_common(p, region=False)
    p.add_argument("--epsilons", type=_float_list, default=None, help="Comma-separated region widths")

    p = subparsers.add_parser("mm", help="Run the MM loop (CSV trace)")
    add_common(p, region=False, k=False)
    p.add_argument("--radius", type=_finite_float, default=None, help="Trust radius (default: Settings.mm_radius)")
    p.add_argument("--iters", type=_positive_int, default=None, help="Maximum iterations")
    p.add_argument("--tol", type=_finite_float, default=None, help="Step-length tolerance")
    p.add_argument("--baseline", action="store_true", help="Use Lagrange-baseline majorizers")

    p = subparsers.add_parser("plotdata", help="Bounds on a grid for plotting (CSV)")
    add_common(p)
    p.add_argument("--n", type=_positive_int, default=200, help="Number of rows (default: 200)")
    p.add_argument("--split", action="store_true", help="Use split enclosures (odd k)")

    return parser


# Commands


def _piece_json(e: TaylorEnclosure) -> dict:
    return {
        "region": {"lo": e.trust_region.lo, "hi": e.trust_region.hi},
        "method": e.method.value,
        "interval": {"lo": e.interval_coeff.lo, "hi": e.interval_coeff.hi},
        "taylor_coeffs": list(e.lower_coeffs.coeffs),
    }


def _enclose(args, f: FunctionDescriptor) -> str:
    if args.split:
        pieces = enclose_split(f, args.k, args.x0, args.region)
        return dumps_json({
            "function": f.name,
            "k": args.k,
            "x0": args.x0,
            "pieces": [_piece_json(e) for e in pieces],
        }) + "\n"
    return dumps_json(enclose(f, args.k, args.x0, args.region).to_json_dict()) + "\n"


def _compare(args, f: FunctionDescriptor) -> str:
    report = enclose(f, args.k, args.x0, args.region)
    e = report.enclosure
    return dumps_json({
        "function": f.name,
        "k": e.k,
        "x0": e.x0,
        "region": {"lo": e.trust_region.lo, "hi": e.trust_region.hi},
        "method": e.method.value,
        "sharp": {"lo": e.interval_coeff.lo, "hi": e.interval_coeff.hi},
        "baseline": {"lo": report.baseline_interval.lo, "hi": report.baseline_interval.hi},
        "width_ratio": report.width_ratio,
    }) + "\n"


def _verify(args, f: FunctionDescriptor) -> str:
    report = enclose(f, args.k, args.x0, args.region)
    validity = verify_enclosure(f, report.enclosure, n=args.n)
    result = {"function": f.name, "method": report.enclosure.method.value, "valid": validity.ok}
    result.update(validity.to_json_dict())
    return dumps_json(result) + "\n"


def _ratio(args, f: FunctionDescriptor) -> str:
    return width_ratio_series(f, args.k, args.x0, epsilons=args.epsilons).to_csv()


def _mm(args, f: FunctionDescriptor) -> str:
    trace = mm_minimize(
        f, args.x0, radius=args.radius, max_iters=args.iters, tol=args.tol, use_baseline=args.baseline
    )
    return trace.to_csv()


def _plotdata(args, f: FunctionDescriptor) -> str:
    xs = np.linspace(args.region.lo, args.region.hi, args.n)
    # the row nearest x0 is moved onto x0 so the zero-width point is in the output
    nearest = int(np.argmin(np.abs(xs - args.x0)))
    if 0 < nearest < args.n - 1 or xs[nearest] == args.x0:
        xs[nearest] = args.x0
    else:
        xs = np.union1d(xs, [args.x0])
    if args.split:
        lower, upper = split_bounds(enclose_split(f, args.k, args.x0, args.region), xs)
    else:
        lower, upper = enclosure_bounds(enclose(f, args.k, args.x0, args.region).enclosure, xs)
    fx = f.values(xs)
    return csv_text(["x", "f", "lower", "upper"], zip(xs, fx, lower, upper))


COMMANDS: Dict[str, Callable[[argparse.Namespace, FunctionDescriptor], str]] = {
    "enclose": _enclose,
    "compare": _compare,
    "verify": _verify,
    "ratio": _ratio,
    "mm": _mm,
    "plotdata": _plotdata,
}


def _report_error(exc: EnclosureError, stderr: TextIO) -> None:
    stderr.write(dumps_json({"error": exc.kind, "message": str(exc)}) + "\n")


def run(argv: Optional[List[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """
    Parse argv, run one subcommand and write its output.

    Returns:
        int: Exit status (0 success, 1 library error, 2 usage error)
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else (0 if exc.code is None else 2)

    try:
        f = parse_function(args.f)
        text = COMMANDS[args.command](args, f)
    except InvalidArgumentError as exc:
        logger.warning(f"{args.command}: {exc}")
        _report_error(exc, stderr)
        return 2
    except EnclosureError as exc:
        logger.warning(f"{args.command}: {exc}")
        _report_error(exc, stderr)
        return 1

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        stdout.write(text)
    return 0
