"""Batch command-line front end.

Subcommands: ``qfi``, ``sensitivity``, ``sweep``, ``gw-compare``, ``validate``.
Exit codes: 0 success, 1 configuration error, 2 numerical failure in a
non-sweep command (sweeps record per-row failures in the table instead).
"""

from __future__ import annotations

import argparse
import os
import sys

from .sweep import ConfigError, emit, parse_config, run_sweep
from .validation import oracle_checks

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def _add_common(parser):
    parser.add_argument("--config", required=True, help="path to the run configuration")
    parser.add_argument("--out", default=None, help="output file path")
    parser.add_argument("--format", default="csv", choices=("csv", "json"),
                        help="output format (default csv)")
    parser.add_argument("--fd-step", type=float, default=1e-4, metavar="H",
                        help="finite-difference step (default 1e-4)")
    parser.add_argument("--eps0", type=float, default=1e-3,
                        help="strain evaluation point for moment signals (default 1e-3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pumpedsu11",
        description="Pumped-up SU(1,1) interferometry with Gaussian channels")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qfi", help="quantum Fisher information at one configuration")
    _add_common(p)
    p = sub.add_parser("sensitivity", help="number-sum sensitivity at one configuration")
    _add_common(p)
    p = sub.add_parser("sweep", help="evaluate a parameter grid")
    _add_common(p)
    p.add_argument("--workers", type=int, default=1, help="concurrent grid workers")
    p = sub.add_parser("gw-compare", help="original vs pumped-up detector QFI")
    _add_common(p)
    p = sub.add_parser("validate", help="run the Fock-oracle cross-check suite")
    p.add_argument("--cutoff", type=int, default=25, help="per-mode Fock cutoff")
    return parser


def _out_path(args):
    if args.out is None:
        return None
    override = os.environ.get("PUMPEDSU11_OUTDIR")
    if override:
        return os.path.join(override, os.path.basename(args.out))
    return args.out


def _single_point(args, quantities) -> int:
    spec = parse_config(args.config)
    if spec.kind != "interferometer":
        raise ConfigError(f"{args.config}: this command needs an interferometer config")
    if spec.sweeps:
        raise ConfigError(f"{args.config}: single-point command, but [sweep] is present; "
                          "use the sweep subcommand")
    spec = type(spec)(base=spec.base, sweeps=(), quantities=quantities, kind=spec.kind)
    rows = run_sweep(spec, eps0=args.eps0, h=args.fd_step)
    row = rows[0]
    if row["error"]:
        print(f"error: {row['error']}", file=sys.stderr)
        return EXIT_NUMERICAL
    for key in quantities_to_columns(quantities):
        if row.get(key) is not None:
            print(f"{key} = {row[key]:.12e}")
    path = _out_path(args)
    if path:
        emit(rows, args.format, path, spec=spec)
        print(f"wrote {path}")
    return EXIT_OK


def quantities_to_columns(quantities):
    cols = []
    for q in quantities:
        cols.extend(("mean_S", "var_S") if q == "moments" else (q,))
    return cols


def _cmd_qfi(args) -> int:
    spec = parse_config(args.config)
    # the phase channel has no closed form in this package
    if spec.kind == "interferometer" and spec.base.get("channel") == "phase":
        return _single_point(args, ("H_numeric",))
    return _single_point(args, ("H_numeric", "H_closed"))


def _cmd_sensitivity(args) -> int:
    return _single_point(args, ("F0", "moments", "H_numeric"))


def _cmd_sweep(args) -> int:
    spec = parse_config(args.config)
    rows = run_sweep(spec, eps0=args.eps0, h=args.fd_step, workers=max(1, args.workers))
    path = _out_path(args)
    text = emit(rows, args.format, path, spec=spec)
    if path:
        print(f"wrote {path} ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_gw_compare(args) -> int:
    spec = parse_config(args.config)
    if spec.kind != "gw":
        raise ConfigError(f"{args.config}: gw-compare needs a [gw] section")
    rows = run_sweep(spec, eps0=args.eps0, h=args.fd_step)
    if len(rows) == 1 and rows[0]["error"]:
        print(f"error: {rows[0]['error']}", file=sys.stderr)
        return EXIT_NUMERICAL
    if not spec.sweeps:
        row = rows[0]
        for key in ("qfi_original", "qfi_pumped", "ratio", "theta", "theta_max"):
            print(f"{key} = {row[key]:.12e}")
    path = _out_path(args)
    if path:
        emit(rows, args.format, path, spec=spec)
        print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def _cmd_validate(args) -> int:
    checks = oracle_checks(cutoff=args.cutoff)
    failed = 0
    for name, passed, detail in checks:
        status = "PASS" if passed else "FAIL"
        print(f"[{status}] {name}: {detail}")
        failed += not passed
    print(f"{len(checks) - failed}/{len(checks)} oracle checks passed")
    return EXIT_OK if failed == 0 else EXIT_NUMERICAL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "qfi": _cmd_qfi,
        "sensitivity": _cmd_sensitivity,
        "sweep": _cmd_sweep,
        "gw-compare": _cmd_gw_compare,
        "validate": _cmd_validate,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FloatingPointError, ArithmeticError, RuntimeError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
