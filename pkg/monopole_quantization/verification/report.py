"""Verification reports and their JSON/CSV emission.

Both files are byte-stable for fixed inputs: checks are sorted by name, keys
are sorted, and floats are written with 17 significant digits. Non-finite
floats become JSON null and CSV "nan"/"inf".
"""

import csv
import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from cryptography.hazmat.primitives import hashes

from monopole_quantization.errors import ReportIoError

logger = logging.getLogger(__name__)

MAX_SKIPPED_RATIO = 0.5
CSV_COLUMNS = (
    "name",
    "suite",
    "samples_used",
    "samples_skipped",
    "max_abs_err",
    "tolerance",
    "pass",
)


def format_float(value: float) -> str:
    """Fixed 17-significant-digit rendering used by both report formats"""
    return "%.17g" % value


@dataclass
class CheckResult:
    """Outcome of one verification check"""

    name: str
    suite: str
    samples_used: int
    samples_skipped: int
    max_abs_err: float
    tolerance: float
    convention_notes: str = ""

    @property
    def passed(self) -> bool:
        """True iff the error is within tolerance and under half the samples skipped"""
        if self.samples_used <= 0 or math.isnan(self.max_abs_err):
            return False
        return (
            self.max_abs_err <= self.tolerance
            and self.samples_skipped / self.samples_used < MAX_SKIPPED_RATIO
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "suite": self.suite,
            "samples_used": self.samples_used,
            "samples_skipped": self.samples_skipped,
            "max_abs_err": self.max_abs_err,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "convention_notes": self.convention_notes,
        }


@dataclass
class VerificationReport:
    """All check results of one run plus the configuration that produced them"""

    seed: int
    config: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    def __post_init__(self) -> None:
        self.checks = sorted(self.checks, key=lambda check: check.name)

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def digest(self) -> str:
        """SHA-256 over the canonical encoding of the check list"""
        hasher = hashes.Hash(hashes.SHA256())
        hasher.update(encode_json([c.to_dict() for c in self.checks]).encode("utf-8"))
        return hasher.finalize().hex()

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            "seed": self.seed,
            "config": self.config,
            "checks": [check.to_dict() for check in self.checks],
            "all_passed": self.all_passed,
            "digest": self.digest(),
        }
        if include_timing:
            document["wall_time"] = self.wall_time
        return document


def encode_json(value: Any, indent: int = 2, level: int = 0) -> str:
    """
    Encode a JSON document with sorted keys and fixed float formatting.

    The layout matches ``json.dumps(value, indent=2, sort_keys=True)``
    except for floats, which use 17 significant digits.

    Args:
        value: Nested dicts, lists, strings, numbers, booleans and None
        indent: Spaces per nesting level
        level: Current nesting level

    Returns:
        str: The encoded document

    Raises:
        TypeError: For values JSON cannot represent
    """
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if value is None or isinstance(value, bool):
        return {None: "null", True: "true", False: "false"}[value]
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value) if math.isfinite(value) else "null"
    if isinstance(value, str):
        return _encode_string(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{_encode_string(str(key))}: "
            f"{encode_json(value[key], indent, level + 1)}"
            for key in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + encode_json(item, indent, level + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"Cannot encode {type(value).__name__} as JSON")


def _encode_string(text: str) -> str:
    return json.dumps(text)


def _ensure_directory(path: str) -> None:
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)


def _save_json(report: VerificationReport, path: str, include_timing: bool) -> None:
    _ensure_directory(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(encode_json(report.to_dict(include_timing)))
        f.write("\n")


def _save_csv(report: VerificationReport, path: str) -> None:
    _ensure_directory(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for check in report.checks:
            writer.writerow(
                [
                    check.name,
                    check.suite,
                    check.samples_used,
                    check.samples_skipped,
                    format_float(check.max_abs_err),
                    format_float(check.tolerance),
                    "true" if check.passed else "false",
                ]
            )


def emit(
    report: VerificationReport,
    json_path: Optional[str] = None,
    csv_path: Optional[str] = None,
    include_timing: bool = False,
) -> None:
    """
    Write the report as JSON and/or CSV.

    Args:
        report: The report to write
        json_path: Destination of the JSON document, or None
        csv_path: Destination of the CSV table, or None
        include_timing: Add the wall time to the JSON document

    Raises:
        ReportIoError: If a file cannot be written
    """
    try:
        if json_path:
            _save_json(report, json_path, include_timing)
            logger.info("Wrote JSON report to %s", json_path)
        if csv_path:
            _save_csv(report, csv_path)
            logger.info("Wrote CSV report to %s", csv_path)
    except OSError as exc:
        raise ReportIoError(f"Cannot write report: {exc}") from exc
