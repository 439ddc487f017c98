"""Run the selected verification suites and assemble a report"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List

from monopole_quantization.errors import MonopoleQuantizationError
from monopole_quantization.verification.checks import (
    ej_checks,
    orbit_checks,
    quat_checks,
    weyl_checks,
)
from monopole_quantization.verification.checks.check_context import (
    CheckContext,
    CheckFunction,
)
from monopole_quantization.verification.report import CheckResult, VerificationReport
from monopole_quantization.verification.suite_config import (
    SuiteConfig,
    serialize_suite_config,
)

logger = logging.getLogger(__name__)

SUITE_CHECKS: Dict[str, Dict[str, CheckFunction]] = {
    "quat": quat_checks.CHECKS,
    "ej": ej_checks.CHECKS,
    "weyl": weyl_checks.CHECKS,
    "orbit": orbit_checks.CHECKS,
}


def selected_checks(config: SuiteConfig) -> Dict[str, CheckFunction]:
    """Checks of the configured suites, keyed by qualified name"""
    checks: Dict[str, CheckFunction] = {}
    for suite in config.suites:
        checks.update(SUITE_CHECKS[suite])
    return checks


def run_check(ctx: CheckContext, name: str, check: CheckFunction) -> CheckResult:
    """
    Run one check, turning library errors into a failing result.

    Args:
        ctx: Shared check context
        name: Qualified check name
        check: The check function

    Returns:
        CheckResult: The outcome; an infinite error when the check raised
    """
    logger.debug("Running %s", name)
    try:
        result = check(ctx, name)
    except MonopoleQuantizationError as exc:
        logger.error("Check %s raised %s: %s", name, type(exc).__name__, exc)
        result = ctx.result(
            name,
            float("inf"),
            0.0,
            0,
            notes=f"{type(exc).__name__}: {exc}",
        )
    level = logging.DEBUG if result.passed else logging.WARNING
    logger.log(
        level,
        "%s: max_abs_err=%.3e tolerance=%.1e used=%d skipped=%d",
        name,
        result.max_abs_err,
        result.tolerance,
        result.samples_used,
        result.samples_skipped,
    )
    return result


def run(config: SuiteConfig) -> VerificationReport:
    """
    Run every check of the configured suites.

    Each check draws from its own stream keyed by (seed, name), so the report
    is the same for any worker count.

    Args:
        config: Validated configuration

    Returns:
        VerificationReport: Results sorted by check name
    """
    ctx = CheckContext(config)
    checks = selected_checks(config)
    logger.info(
        "Running %d checks from suites %s with seed %d",
        len(checks),
        ",".join(config.suites),
        config.seed,
    )

    start = time.perf_counter()
    results: List[CheckResult]
    if config.workers == 1:
        results = [run_check(ctx, name, check) for name, check in checks.items()]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = [
                pool.submit(run_check, ctx, name, check)
                for name, check in checks.items()
            ]
            results = [future.result() for future in futures]
    wall_time = time.perf_counter() - start

    report = VerificationReport(
        seed=config.seed,
        config=serialize_suite_config(config),
        checks=results,
        wall_time=wall_time,
    )
    logger.info(
        "%d of %d checks passed in %.2fs",
        len(results) - len(report.failed()),
        len(results),
        wall_time,
    )
    return report
