"""Shared plumbing of the verification checks"""

from typing import Callable, Dict, Iterable, Tuple

import numpy as np

from monopole_quantization.kinematics.probe_function import (
    ProbeFunction,
    generate_probe_function,
)
from monopole_quantization.kinematics.sample_domain import SampleDomain
from monopole_quantization.verification.report import CheckResult
from monopole_quantization.verification.suite_config import SuiteConfig


class CheckContext:
    """Configuration and sample domain handed to every check"""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.domain: SampleDomain = config.sample_domain()

    @property
    def samples(self) -> int:
        return self.config.samples

    def stream(self, name: str) -> np.random.Generator:
        """Independent random stream of one check"""
        return self.domain.generator(name)

    def probe(self, rng: np.random.Generator) -> ProbeFunction:
        return generate_probe_function(rng)

    def result(
        self,
        name: str,
        error: float,
        tolerance: float,
        used: int,
        skipped: int = 0,
        notes: str = "",
    ) -> CheckResult:
        """Package a check outcome; the suite is the prefix of the check name"""
        return CheckResult(
            name=name,
            suite=name.split(".", 1)[0],
            samples_used=int(used),
            samples_skipped=int(skipped),
            max_abs_err=float(error),
            tolerance=float(tolerance),
            convention_notes=notes,
        )


CheckFunction = Callable[[CheckContext, str], CheckResult]


def max_abs(*arrays: np.ndarray) -> float:
    """Largest absolute entry over several arrays; NaN propagates"""
    peaks = [np.max(np.abs(np.asarray(a, dtype=float)), initial=0.0) for a in arrays]
    return float(np.max(peaks, initial=0.0))


def all_admissible(
    domain: SampleDomain, moves: Iterable[Tuple[np.ndarray, np.ndarray]]
) -> np.ndarray:
    """AND of translation_admissible over (translation, base point) pairs"""
    mask = None
    for a, x in moves:
        ok = domain.translation_admissible(a, x)
        mask = ok if mask is None else mask & ok
    if mask is None:
        raise ValueError("At least one translation is required")
    return mask


def suite_registry(
    suite: str, checks: Dict[str, CheckFunction]
) -> Dict[str, CheckFunction]:
    """Qualify short check names with their suite"""
    return {f"{suite}.{short}": check for short, check in checks.items()}
