"""Command-line front end: ``ewenswalk <command> ...`` or ``python -m ewenswalk``.

Exit codes: 0 success, 1 a verification reported FAIL, 2 usage error
(bad flag, malformed theta, size cap exceeded).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .config import caps
from .exceptions import EwensWalkError
from .partitions import format_partition


def format_number(x: Any) -> str:
    """Rationals as ``p/q``; floats to 12 significant digits; ``None`` as blank."""
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "-inf" if x < 0 else "inf"
        return f"{x:.12g}"
    if isinstance(x, tuple):
        return format_partition(x)
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_number(x)
    if isinstance(x, float):
        return None if not math.isfinite(x) else float(f"{x:.12g}")
    if isinstance(x, tuple):
        return list(x)
    return x


def emit(rows: Sequence[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([{k: _json_value(v) for k, v in row.items()} for row in rows], out, indent=2)
        out.write("\n")
        return
    if not rows:
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(rows[0]))
    for row in rows:
        writer.writerow([format_number(v) for v in row.values()])


def parse_t_range(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"need 0 <= A <= B, got {text!r}")
    return a, b


def _theta(text: str):
    from .spectrum import ThetaValue

    try:
        return ThetaValue.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args) -> tuple[list[dict], int]:
    from .spectrum import spectrum

    rows = []
    for e in spectrum(args.n, args.theta.resolve(args.n), exact=args.exact or None):
        rows.append(
            {
                "partition": e.partition,
                "dimension": e.dimension,
                "eigenvalue": e.eigenvalue_exact if e.eigenvalue_exact is not None else e.value,
                "sign": e.sign,
                "log10_abs": e.log10_abs,
            }
        )
    return rows, 0


def cmd_tv_exact(args) -> tuple[list[dict], int]:
    from .mixing import total_variation_exact

    theta = args.theta.resolve(args.n)
    rows = []
    for t in range(args.t_min, args.t_max + 1):
        tv = total_variation_exact(args.n, theta, t, exact=args.exact or None)
        rows.append(
            {
                "t": t,
                "tv_exact": float(tv),
                "tv_exact_rational": tv if isinstance(tv, Fraction) else None,
            }
        )
    return rows, 0


def cmd_bounds(args) -> tuple[list[dict], int]:
    from .mixing import best_chebyshev_lower_bound, ds_sum, ds_upper_bound, total_variation_exact

    theta = args.theta.resolve(args.n)
    a, b = args.t_range
    with_exact = args.n <= caps().character_table_max
    rows = []
    for t in range(a, b + 1):
        lower, _ = best_chebyshev_lower_bound(args.n, theta, t)
        exact = float(total_variation_exact(args.n, theta, t, exact=args.exact or None)) if with_exact else None
        rows.append(
            {
                "t": t,
                "upper": ds_upper_bound(args.n, theta, t) if t > 0 else 1.0,
                "lower": lower,
                "exact": exact,
                "ds_sum": float(ds_sum(args.n, theta, t, exact=False)),
            }
        )
    return rows, 0


def cmd_cutoff_profile(args) -> tuple[list[dict], int]:
    from .mixing import cutoff_profile

    report = cutoff_profile(args.n, args.theta, args.t_max, exact=args.exact or None)
    rows = [
        {
            "t": r.t,
            "exact_tv": r.exact_tv,
            "upper": r.upper_bound,
            "lower": r.lower_bound,
            "ds_sum": r.ds_sum,
            "threshold": r.threshold,
            "cutoff_bound": r.cutoff_bound,
        }
        for r in report.records
    ]
    summary = {k: _json_value(v) for k, v in report.summary().items()}
    if args.out:
        with open(args.out, "w", newline="") as fh:
            emit(rows, "csv", fh)
        json.dump(summary, sys.stdout)
        sys.stdout.write("\n")
        return [], 0
    json.dump(summary, sys.stderr)
    sys.stderr.write("\n")
    return rows, 0


def cmd_simulate(args) -> tuple[list[dict], int]:
    from .sampler import empirical_statistic

    hist = empirical_statistic(
        args.n, args.theta, args.t, args.samples, args.stat, seed=args.seed, threads=args.threads
    )
    # scalar values ascending; cycle types in reverse lexicographic order like enumeration
    keys = sorted(hist, reverse=args.stat == "cycle-type")
    rows = [{"value": k, "count": hist[k], "frequency": hist[k] / args.samples} for k in keys]
    return rows, 0


def cmd_verify(args) -> tuple[list[dict], int]:
    from . import oracle
    from .characters import verify_character_table

    if args.suite == "characters":
        results = {str(args.n): verify_character_table(args.n)}
    elif args.suite == "dg":
        results = {str(n): oracle.verify_diaconis_green(n) for n in range(1, args.n_max + 1)}
    elif args.suite == "convolution":
        results = {str(args.n): oracle.verify_convolution(args.n, args.theta.resolve(args.n), args.t)}
    else:
        results = {str(args.n): oracle.verify_matching(args.n)}
    ok = all(all(r.values()) for r in results.values())
    report = {
        "suite": args.suite,
        "status": "PASS" if ok else "FAIL",
        "results": {n: {k: "PASS" if v else "FAIL" for k, v in r.items()} for n, r in results.items()},
    }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return [], 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write rows to FILE instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads for simulation")
    common.add_argument("--exact", action="store_true", help="force rational arithmetic")

    def n_theta(p, default_theta=None):
        p.add_argument("--n", type=int, required=True)
        if default_theta is None:
            p.add_argument("--theta", type=_theta, required=True, help="p/q, decimal, or n")
        else:
            p.add_argument("--theta", type=_theta, default=_theta(default_theta))

    parser = argparse.ArgumentParser(prog="ewenswalk", description="Exact and Monte Carlo analysis of the Ewens random walk on S_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues and multiplicities")
    n_theta(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("tv-exact", parents=[common], help="exact total variation by characters")
    n_theta(p)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--t-min", type=int, default=1)
    p.set_defaults(func=cmd_tv_exact)

    p = sub.add_parser("bounds", parents=[common], help="upper and lower bounds on total variation")
    n_theta(p)
    p.add_argument("--t-range", type=parse_t_range, required=True, metavar="A:B")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cutoff-profile", parents=[common], help="bounds report with a JSON summary")
    n_theta(p, default_theta="n")
    p.add_argument("--t-max", type=int, default=None)
    p.set_defaults(func=cmd_cutoff_profile)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo histogram of a walk statistic")
    n_theta(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--stat", choices=("fixed-points", "cycle-count", "cycle-type"), default="fixed-points")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="exact verification suites with JSON PASS/FAIL reports")
    vs = p.add_subparsers(dest="suite", required=True)
    q = vs.add_parser("characters", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q = vs.add_parser("dg", parents=[common])
    q.add_argument("--n-max", type=int, default=6)
    q = vs.add_parser("convolution", parents=[common])
    n_theta(q)
    q.add_argument("--t", type=int, required=True)
    q = vs.add_parser("matching", parents=[common])
    q.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("n", "n_max", "t", "t_max", "samples", "threads"):
        value = getattr(args, name, None)
        if value is not None and value < (1 if name in ("n", "n_max", "samples", "threads") else 0):
            print(f"ewenswalk: error: --{name.replace('_', '-')} out of range: {value}", file=sys.stderr)
            return 2
    try:
        rows, code = args.func(args)
    except (EwensWalkError, ValueError) as exc:
        print(f"ewenswalk: error: {exc}", file=sys.stderr)
        return 2
    if rows:
        if args.out and args.command != "cutoff-profile":
            with open(args.out, "w", newline="") as fh:
                emit(rows, args.format, fh)
        else:
            buf = io.StringIO()
            emit(rows, args.format, buf)
            sys.stdout.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())
