"""Command-line entry point of the verification suites"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from monopole_quantization.errors import ConfigError, ReportIoError
from monopole_quantization.verification.report import VerificationReport, emit
from monopole_quantization.verification.runner import run
from monopole_quantization.verification.suite_config import (
    SUITES,
    deserialize_suite_config,
    load_suite_config,
)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# flag destination -> configuration key
OVERRIDE_KEYS = {
    "seed": "seed",
    "samples": "samples",
    "tol_exact": "tol_exact",
    "tol_fd": "tol_fd",
    "fd_step": "fd_step",
    "rmin": "r_min",
    "box": "box",
    "workers": "workers",
}


def setup_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, force=True)


def _suite_list(text: str) -> List[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Numerical verification of the quaternionic monopole kinematics",
    )
    parser.add_argument(
        "--suites",
        type=_suite_list,
        help=f"Comma-separated suites to run (default: {','.join(SUITES)})",
    )
    parser.add_argument("--seed", type=int, help="Unsigned 64-bit master seed")
    parser.add_argument("--samples", type=int, help="Samples per check")
    parser.add_argument("--tol-exact", type=float, help="Tolerance of exact identities")
    parser.add_argument(
        "--tol-fd", type=float, help="Tolerance of finite-difference checks"
    )
    parser.add_argument("--fd-step", type=float, help="Finite-difference step")
    parser.add_argument("--rmin", type=float, help="Exclusion radius around the origin")
    parser.add_argument("--box", type=float, help="Half-width of the sampling box")
    parser.add_argument("--workers", type=int, help="Threads used to run checks")
    parser.add_argument(
        "--config", help="JSON configuration file; flags take precedence"
    )
    parser.add_argument("--json", help="Write the JSON report to this path")
    parser.add_argument("--csv", help="Write the CSV report to this path")
    parser.add_argument(
        "--timing", action="store_true", help="Include the wall time in the JSON report"
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Logging level (default: WARNING)",
    )
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Configuration keys of the flags given on the command line"""
    overrides = {
        key: getattr(args, dest)
        for dest, key in OVERRIDE_KEYS.items()
        if getattr(args, dest) is not None
    }
    if args.suites is not None:
        overrides["suites"] = args.suites
    return overrides


def print_summary(report: VerificationReport) -> None:
    for check in report.checks:
        mark = "✅" if check.passed else "❌"
        print(
            f"{mark} {check.name}: max_abs_err={check.max_abs_err:.3e} "
            f"tolerance={check.tolerance:.1e} "
            f"samples={check.samples_used}/{check.samples_used + check.samples_skipped}"
        )
    failed = len(report.failed())
    if failed:
        print(f"❌ {failed} of {len(report.checks)} checks failed")
    else:
        print(f"🎉 All {len(report.checks)} checks passed!")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the verification suites.

    Returns:
        int: 0 when every check passes, 1 when any check fails, 2 on
        configuration or report errors
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        overrides = _overrides(args)
        if args.config:
            config = load_suite_config(args.config, overrides)
        else:
            config = deserialize_suite_config(overrides)
        report = run(config)
        emit(report, args.json, args.csv, args.timing)
    except (ConfigError, ReportIoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print_summary(report)
    return EXIT_PASSED if report.all_passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
