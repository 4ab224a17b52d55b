"""Command line front end: SNR sweeps, quadrature tables and the validation report.

Exit codes: 0 ok, 1 a validation check failed, 2 usage error, 3 numerical
convergence failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from contextlib import contextmanager

from . import channel
from .discrete import two_point_capacity
from .errors import DomainError, NumericalError
from .quadrature import FULL_RANGE_MAX_ORDER, HALF_RANGE_MAX_ORDER, hermite_rule
from .validation import db_grid, run_checks

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

SWEEP_COLUMNS = (
    "snr_db", "omega_sq", "h_y", "h_y_given_x", "mi_gauss_nats", "mi_gauss_bits",
    "lower_bound", "c_rcsi", "c_cnf", "cap_discrete2", "gap_g", "h_y_nf",
    "h_y_given_x_nf", "pct_lost_vs_mi", "pct_lost_vs_cap",
)

log = logging.getLogger("rayleigh_mi")


def _pct_lost(bound, reference):
    if reference is None:
        return None
    if reference == 0.0:
        return 0.0
    return 100.0 * (1.0 - bound / reference)


def sweep_row(omega_sq, outer, inner, with_discrete=False, tol=1e-9) -> dict:
    point = channel.info_point(omega_sq, outer, inner)
    h_nf, h_x_nf = channel.nonfading_entropies(omega_sq)
    cap = None
    if with_discrete:
        cap = 0.0 if omega_sq == 0.0 else two_point_capacity(omega_sq, tol)[1]
    return {
        "snr_db": point.snr_db,
        "omega_sq": point.omega_sq,
        "h_y": point.h_y,
        "h_y_given_x": point.h_y_given_x,
        "mi_gauss_nats": point.mutual_info,
        "mi_gauss_bits": point.mutual_info / math.log(2.0),
        "lower_bound": point.lower_bound,
        "c_rcsi": point.c_rcsi,
        "c_cnf": point.c_cnf,
        "cap_discrete2": cap,
        "gap_g": point.gap_g,
        "h_y_nf": h_nf,
        "h_y_given_x_nf": h_x_nf,
        "pct_lost_vs_mi": _pct_lost(point.lower_bound, point.mutual_info),
        "pct_lost_vs_cap": _pct_lost(point.lower_bound, cap),
    }


def _fmt(value):
    if value is None:
        return ""
    return format(value, ".12g")


def _json_value(value):
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return None
    return float(format(value, ".12g"))


@contextmanager
def _open_output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _sweep_grid(args):
    if args.omega_sq is not None:
        return list(args.omega_sq)
    return [10.0 ** (d / 10.0) for d in db_grid(args.snr_db_min, args.snr_db_max, args.snr_db_step)]


def cmd_sweep(args) -> int:
    outer = hermite_rule(args.quad_order)
    inner = hermite_rule(args.inner_order)
    grid = _sweep_grid(args)
    rows = []
    with _open_output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n") if args.format == "csv" else None
        if writer:
            writer.writerow(SWEEP_COLUMNS)
        try:
            for s in grid:
                row = sweep_row(s, outer, inner, args.with_discrete, args.tol)
                if writer:
                    writer.writerow([_fmt(row[c]) for c in SWEEP_COLUMNS])
                    out.flush()
                else:
                    rows.append({c: _json_value(row[c]) for c in SWEEP_COLUMNS})
        except NumericalError as exc:
            if writer:
                out.write(f"# error: {exc}\n")
            else:
                json.dump({"rows": rows, "error": str(exc)}, out, indent=2)
                out.write("\n")
            log.error("%s", exc)
            return EXIT_NUMERICAL
        if not writer:
            json.dump({"rows": rows}, out, indent=2)
            out.write("\n")
    return EXIT_OK


def cmd_quad(args) -> int:
    rule = hermite_rule(args.order, args.domain)
    with _open_output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("node", "weight"))
        for v, w in zip(rule.nodes, rule.weights):
            writer.writerow((format(v, ".15g"), format(w, ".15g")))
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        report = run_checks(args.tol, args.seed)
    except NumericalError as exc:
        log.error("check aborted: %s", exc)
        return EXIT_NUMERICAL
    with _open_output(args.output) as out:
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
    for c in report["checks"]:
        if not c["passed"]:
            log.warning("FAILED %s: %.3g (bound %.3g)", c["name"], c["value"], c["bound"])
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def _positive_float(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _power_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad power value in {text!r}")
    if not values or any(not math.isfinite(v) or v < 0 for v in values):
        raise argparse.ArgumentTypeError("powers must be finite and >= 0")
    return values


def _order(cap):
    def parse(text):
        value = int(text)
        if not 1 <= value <= cap:
            raise argparse.ArgumentTypeError(f"order must be in [1, {cap}]")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rayleigh-mi",
        description="Mutual information of the non-coherent Rayleigh fading channel with Gaussian input.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="tabulate entropies, MI and bounds over an SNR grid")
    sweep.add_argument("--snr-db-min", type=float, default=-10.0)
    sweep.add_argument("--snr-db-max", type=float, default=35.0)
    sweep.add_argument("--snr-db-step", type=_positive_float, default=0.5)
    sweep.add_argument("--omega-sq", type=_power_list, default=None,
                       help="comma-separated linear powers; overrides the dB grid")
    sweep.add_argument("--quad-order", type=_order(HALF_RANGE_MAX_ORDER), default=15)
    sweep.add_argument("--inner-order", type=_order(HALF_RANGE_MAX_ORDER), default=15)
    sweep.add_argument("--with-discrete", action="store_true",
                       help="also compute the two-point discrete capacity (slow)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--output", default=None)
    sweep.add_argument("--seed", type=int, default=42,
                       help="accepted for symmetry with `check`; the sweep itself draws no random numbers")
    sweep.add_argument("--tol", type=_positive_float, default=1e-9)
    sweep.set_defaults(func=cmd_sweep)

    quad = sub.add_parser("quad", help="print Gauss-Hermite nodes and weights")
    quad.add_argument("--order", "-q", type=int, default=15)
    quad.add_argument("--domain", choices=("half", "full"), default="half")
    quad.add_argument("--output", default=None)
    quad.set_defaults(func=cmd_quad)

    check = sub.add_parser("check", help="run closed form vs oracle validation")
    check.add_argument("--tol", type=_positive_float, default=1e-9)
    check.add_argument("--seed", type=int, default=42)
    check.add_argument("--output", default=None)
    check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "quad":
        cap = HALF_RANGE_MAX_ORDER if args.domain == "half" else FULL_RANGE_MAX_ORDER
        if not 1 <= args.order <= cap:
            parser.error(f"--order must be in [1, {cap}] for the {args.domain} domain")
        args.domain = "half_range" if args.domain == "half" else "full_range"
    if args.command == "sweep" and args.omega_sq is None and args.snr_db_max < args.snr_db_min:
        parser.error("--snr-db-max must not be below --snr-db-min")
    try:
        return args.func(args)
    except DomainError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except NumericalError as exc:
        log.error("%s", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
