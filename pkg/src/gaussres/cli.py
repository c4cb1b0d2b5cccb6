"""Command-line entry point: ``grv verify <suite>`` and ``grv series <kind>``.

Exit codes: 0 all checks passed, 1 at least one failed, 2 usage or
configuration error.  GRV_TOL and GRV_NMAX supply defaults that explicit
flags override.
"""

import argparse
import logging
import os
import sys

from .errors import InvalidOverride, IoFailure, UnknownKind, UnknownSuite
from .report import ALL, KINDS, SUITES, emit_series, run_suite

log = logging.getLogger("gaussres")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _env(name, convert):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return convert(raw)
    except ValueError:
        raise InvalidOverride(f"{name}={raw!r} is not a valid value")


def _n_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _y_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="grv",
        description="Numerical verification of the contour-integral route to the Gaussian integral.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    verify.add_argument("suite", choices=(*SUITES, ALL))
    verify.add_argument("--n-max", type=int, default=None, help="largest contour index (default 10)")
    verify.add_argument("--tol", type=float, default=None,
                        help="override the tolerance of every identity check")
    verify.add_argument("--terms", type=int, default=None,
                        help="term budget for eta acceleration (default 40)")
    verify.add_argument("--y-list", type=_y_list, default=None,
                        help="exponents for the f(y) check, e.g. 1,1.5,2")
    verify.add_argument("--out", default=None, help="write the report here instead of stdout")
    verify.add_argument("--no-timing", action="store_true",
                        help="omit wall_time fields so reruns are byte-identical")

    ser = sub.add_parser("series", help="emit a convergence series as CSV")
    ser.add_argument("kind", choices=KINDS)
    ser.add_argument("--n", dest="n_list", type=_n_list, required=True,
                     help="ascending comma-separated indices, e.g. 1,10,100")
    ser.add_argument("--out", default=None, help="CSV path (default stdout)")
    return parser


def _verify(args):
    params = {
        "n_max": args.n_max if args.n_max is not None else _env("GRV_NMAX", int),
        "tol": args.tol if args.tol is not None else _env("GRV_TOL", float),
        "terms": args.terms,
        "y_list": args.y_list,
    }
    report = run_suite(args.suite, params)
    text = report.to_json(timing=not args.no_timing)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    s = report.summary
    log.info("%s: %d passed, %d failed of %d", args.suite, s["passed"], s["failed"], s["total"])
    return report.exit_code


def _series(args):
    rows = emit_series(args.kind, args.n_list, args.out)
    log.info("wrote %d rows", rows)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "verify":
            return _verify(args)
        return _series(args)
    except (InvalidOverride, UnknownSuite, UnknownKind, ValueError) as exc:
        print(f"grv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IoFailure as exc:
        print(f"grv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
