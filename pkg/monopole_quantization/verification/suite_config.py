"""Configuration of the verification suites"""

import json
import os
from typing import Any, Dict, Iterable, Optional, Tuple

from monopole_quantization.errors import ConfigError
from monopole_quantization.finite_difference import DEFAULT_FD_STEP
from monopole_quantization.kinematics.sample_domain import (
    DEFAULT_BOX,
    DEFAULT_CONE_TOLERANCE,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MAX_SEED,
    SampleDomain,
)
from monopole_quantization.quaternions.quaternion import DEFAULT_R_MIN
from monopole_quantization.weyl.weyl_system import (
    FROZEN_WEYL_CONVENTION,
    WeylConvention,
    WeylOrdering,
)

SUITES = ("quat", "ej", "weyl", "orbit")

DEFAULT_TOL_EXACT = 1e-12
DEFAULT_TOL_FD = 1e-6
DEFAULT_TOL_OPERATOR = 1e-8
DEFAULT_TOL_GROUP = 1e-10


class SuiteConfig:
    """Validated settings for one verification run"""

    def __init__(
        self,
        seed: int = DEFAULT_SEED,
        samples: int = DEFAULT_SAMPLES,
        tol_exact: float = DEFAULT_TOL_EXACT,
        tol_fd: float = DEFAULT_TOL_FD,
        fd_step: float = DEFAULT_FD_STEP,
        r_min: float = DEFAULT_R_MIN,
        box: float = DEFAULT_BOX,
        suites: Iterable[str] = SUITES,
        cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
        tol_operator: float = DEFAULT_TOL_OPERATOR,
        tol_group: float = DEFAULT_TOL_GROUP,
        weyl_convention: WeylConvention = FROZEN_WEYL_CONVENTION,
        workers: int = 1,
    ):
        """
        Initialize a suite configuration.

        Args:
            seed: Unsigned 64-bit seed of all random streams
            samples: Samples per check (>= 1)
            tol_exact: Tolerance of identities exact in floating point
            tol_fd: Tolerance of first-derivative finite-difference oracles
            fd_step: Finite-difference step (< r_min)
            r_min: Exclusion radius around the origin
            box: Half-width of the sampling box
            suites: Subset of quat, ej, weyl, orbit
            cone_tolerance: Antipodal margin
            tol_operator: Tolerance of commutator and analytic-vs-analytic checks
            tol_group: Tolerance of unit-phase and group-action checks
            weyl_convention: Frozen Weyl ordering and phase sign
            workers: Number of worker threads

        Raises:
            ConfigError: If any setting is out of range
        """
        if not isinstance(seed, int) or not 0 <= seed < MAX_SEED:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if not isinstance(samples, int) or samples < 1:
            raise ConfigError("samples must be an integer >= 1")
        for name, value in (
            ("tol_exact", tol_exact),
            ("tol_fd", tol_fd),
            ("tol_operator", tol_operator),
            ("tol_group", tol_group),
            ("fd_step", fd_step),
            ("r_min", r_min),
            ("box", box),
            ("cone_tolerance", cone_tolerance),
        ):
            if not value > 0.0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if not fd_step < r_min:
            raise ConfigError(
                f"fd_step ({fd_step}) must be smaller than r_min ({r_min})"
            )
        if not box > r_min:
            raise ConfigError(f"box ({box}) must exceed r_min ({r_min})")
        if workers < 1:
            raise ConfigError("workers must be at least 1")

        selected = tuple(suites)
        unknown = [s for s in selected if s not in SUITES]
        if unknown:
            raise ConfigError(f"Unknown suites: {', '.join(unknown)}")
        if not selected:
            raise ConfigError("At least one suite must be selected")

        self.seed = seed
        self.samples = samples
        self.tol_exact = float(tol_exact)
        self.tol_fd = float(tol_fd)
        self.fd_step = float(fd_step)
        self.r_min = float(r_min)
        self.box = float(box)
        self.suites: Tuple[str, ...] = tuple(s for s in SUITES if s in selected)
        self.cone_tolerance = float(cone_tolerance)
        self.tol_operator = float(tol_operator)
        self.tol_group = float(tol_group)
        self.weyl_convention = weyl_convention
        self.workers = int(workers)

    def sample_domain(self) -> SampleDomain:
        """The sample domain described by this configuration"""
        return SampleDomain(
            self.box, self.r_min, self.cone_tolerance, self.samples, self.seed
        )

    def __repr__(self) -> str:
        return f"SuiteConfig({serialize_suite_config(self)})"


def serialize_suite_config(config: SuiteConfig) -> Dict[str, Any]:
    """
    Serialize a configuration to a dictionary.

    The worker count is left out: results do not depend on it.

    Args:
        config: The configuration to serialize

    Returns:
        dict: JSON-compatible dictionary
    """
    return {
        "seed": config.seed,
        "samples": config.samples,
        "tol_exact": config.tol_exact,
        "tol_fd": config.tol_fd,
        "tol_operator": config.tol_operator,
        "tol_group": config.tol_group,
        "fd_step": config.fd_step,
        "r_min": config.r_min,
        "box": config.box,
        "cone_tolerance": config.cone_tolerance,
        "suites": list(config.suites),
        "weyl_ordering": config.weyl_convention.ordering.value,
        "weyl_phase_sign": config.weyl_convention.phase_sign,
    }


def deserialize_suite_config(data: Dict[str, Any]) -> SuiteConfig:
    """
    Deserialize a configuration; missing keys take their defaults.

    Args:
        data: Dictionary as produced by serialize_suite_config

    Returns:
        SuiteConfig: The validated configuration

    Raises:
        ConfigError: On unknown keys or invalid values
    """
    known = set(serialize_suite_config(SuiteConfig())) | {"workers"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")

    convention_keys = ("weyl_ordering", "weyl_phase_sign")
    kwargs = {k: v for k, v in data.items() if k not in convention_keys}
    if "weyl_ordering" in data or "weyl_phase_sign" in data:
        try:
            kwargs["weyl_convention"] = WeylConvention(
                WeylOrdering(
                    data.get("weyl_ordering", FROZEN_WEYL_CONVENTION.ordering.value)
                ),
                int(data.get("weyl_phase_sign", FROZEN_WEYL_CONVENTION.phase_sign)),
            )
        except ValueError as exc:
            raise ConfigError(f"Invalid Weyl convention: {exc}") from exc
    try:
        return SuiteConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_suite_config(
    path: str, overrides: Optional[Dict[str, Any]] = None
) -> SuiteConfig:
    """
    Load a configuration from a JSON file, applying explicit overrides on top.

    Args:
        path: Path of the JSON file
        overrides: Settings that take precedence over the file

    Returns:
        SuiteConfig: The validated configuration

    Raises:
        ConfigError: If the file is missing, malformed or invalid
    """
    if not os.path.exists(path):
        raise ConfigError(f"Configuration file not found: {path}")
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"Cannot read configuration {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("Configuration file must hold a JSON object")
    data.update(overrides or {})
    return deserialize_suite_config(data)
