"""Exponential quaternionic Weyl operators T(a, a') and their composition law.

Every ordering has the shape T(alpha) = U(a) V(a') exp(c a.a' J), where V(a')
multiplies by exp(j(x) a'.x). Its closed form is

    (T(alpha) psi)(x) = Phi_alpha(x) psi(x - a).

Composition defects are inner factors:
T(alpha) T(beta) psi(x) = Phi_{alpha+beta}(x) D(y) psi(y) with y = x - a - b.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from monopole_quantization.errors import InsufficientSamples
from monopole_quantization.kinematics.cocycle import cocycle_w, multiplier_m
from monopole_quantization.kinematics.probe_function import QuaternionField
from monopole_quantization.kinematics.sample_domain import (
    DEFAULT_CONE_TOLERANCE,
    SampleDomain,
)
from monopole_quantization.quaternions.quaternion import (
    DEFAULT_R_MIN,
    Quaternion,
    jdir,
    qexp_pure,
)

logger = logging.getLogger(__name__)

PSI_FLOOR = 1e-8
MAX_SKIPPED_FRACTION = 0.5
MIN_ADMISSIBLE_FRACTION = 0.9
AGREEMENT_TOLERANCE = 1e-10


class WeylOrdering(Enum):
    """Operator orderings of the exponential Weyl operator"""

    ORDERED_PX = "ordered-PX"
    ORDERED_XP = "ordered-XP"
    SYMMETRIC = "symmetric"


# c in T = U(a) V(a') exp(c a.a' J)
CENTRAL_COEFFICIENT: Dict[WeylOrdering, float] = {
    WeylOrdering.ORDERED_PX: -0.5,
    WeylOrdering.ORDERED_XP: 1.5,
    WeylOrdering.SYMMETRIC: 0.5,
}


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("...k,...k->...", a, b)


class WeylLabel:
    """Phase-space label alpha = (a, a') of a Weyl operator"""

    def __init__(self, a: Any, a_prime: Any):
        """
        Initialize a Weyl label.

        Args:
            a: Translation part, shape (..., 3)
            a_prime: Position-phase part, shape (..., 3)

        Raises:
            ValueError: If a component is not finite or not a 3-vector
        """
        self.a = np.asarray(a, dtype=float)
        self.a_prime = np.asarray(a_prime, dtype=float)
        for part in (self.a, self.a_prime):
            if part.ndim == 0 or part.shape[-1] != 3:
                raise ValueError("Weyl label parts must be 3-vectors")
            if not np.all(np.isfinite(part)):
                raise ValueError("Weyl label components must be finite")

    def __add__(self, other: "WeylLabel") -> "WeylLabel":
        return WeylLabel(self.a + other.a, self.a_prime + other.a_prime)

    def symplectic_pairing(self, other: "WeylLabel") -> np.ndarray:
        """a.b' - b.a' for self = (a, a') and other = (b, b')"""
        return _dot(self.a, other.a_prime) - _dot(other.a, self.a_prime)

    def __repr__(self) -> str:
        return f"WeylLabel(a={self.a.tolist()}, a_prime={self.a_prime.tolist()})"


@dataclass(frozen=True)
class WeylConvention:
    """Ordering of T(alpha) and sign of the symplectic phase in its composition law"""

    ordering: WeylOrdering
    phase_sign: int

    def describe(self) -> str:
        sign = "+" if self.phase_sign > 0 else "-"
        return (
            f"T(alpha) ordering '{self.ordering.value}'; composition phase "
            f"m(a,b;y) exp({sign}(1/2) j(y)(a.b' - b.a')) at y = x-a-b"
        )


FROZEN_WEYL_CONVENTION = WeylConvention(WeylOrdering.SYMMETRIC, -1)


def weyl_phase(
    label: WeylLabel,
    ordering: WeylOrdering,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> Quaternion:
    """
    The unit phase Phi_alpha(x) of T(alpha) in the requested ordering.

    ordered-PX: w(a; y) exp(j(y)(a'.y - a.a'/2))
    ordered-XP: exp(j(x) a'.x) w(a; y) exp(j(y) a.a'/2)
    symmetric:  w(a; y) exp(j(y)(a'.y + a.a'/2))

    with y = x - a.

    Raises:
        SingularPoint: If x or x - a is inside the exclusion radius
        AntipodalTranslation: If x and x - a are anti-parallel
    """
    x_arr = np.asarray(x, dtype=float)
    origin = x_arr - label.a
    w = cocycle_w(label.a, origin, r_min, cone_tolerance)
    j_origin = jdir(origin, r_min)
    central = _dot(label.a, label.a_prime)

    if ordering is WeylOrdering.ORDERED_XP:
        position = qexp_pure(jdir(x_arr, r_min), _dot(label.a_prime, x_arr))
        return position * w * qexp_pure(j_origin, 0.5 * central)
    if ordering is WeylOrdering.ORDERED_PX:
        return w * qexp_pure(j_origin, _dot(label.a_prime, origin) - 0.5 * central)
    if ordering is WeylOrdering.SYMMETRIC:
        return w * qexp_pure(j_origin, _dot(label.a_prime, origin) + 0.5 * central)
    raise ValueError(f"Unknown Weyl ordering {ordering}")


def weyl_T(
    label: WeylLabel,
    ordering: WeylOrdering,
    psi: QuaternionField,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> Quaternion:
    """
    Evaluate (T(alpha) psi)(x) = Phi_alpha(x) psi(x - a).

    Args:
        label: Weyl label (a, a')
        ordering: Operator ordering
        psi: Wavefunction
        x: Evaluation point(s)
        r_min: Exclusion radius
        cone_tolerance: Antipodal margin

    Returns:
        Quaternion: The value at x
    """
    x_arr = np.asarray(x, dtype=float)
    phase = weyl_phase(label, ordering, x_arr, r_min, cone_tolerance)
    return phase * psi(x_arr - label.a)


def weyl_field(
    label: WeylLabel,
    ordering: WeylOrdering,
    psi: QuaternionField,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> QuaternionField:
    """T(alpha) psi as a field"""
    return lambda x: weyl_T(label, ordering, psi, x, r_min, cone_tolerance)


def weyl_admissible(label: WeylLabel, x: Any, domain: SampleDomain) -> np.ndarray:
    """True where T(alpha) is defined at x"""
    x_arr = np.asarray(x, dtype=float)
    return domain.translation_admissible(label.a, x_arr - label.a)


def composition_admissible(
    alpha: WeylLabel, beta: WeylLabel, x: Any, domain: SampleDomain
) -> np.ndarray:
    """True where T(alpha) T(beta), T(alpha + beta) and m(a, b; x-a-b) are defined"""
    x_arr = np.asarray(x, dtype=float)
    return (
        weyl_admissible(alpha, x_arr, domain)
        & weyl_admissible(beta, x_arr - alpha.a, domain)
        & weyl_admissible(alpha + beta, x_arr, domain)
    )


@dataclass
class FormAgreement:
    """Comparison of the ordered-PX and ordered-XP forms over a sample domain"""

    samples_used: int
    samples_skipped: int
    max_deviation: float
    defect_norm_error: float
    agrees: bool


def weyl_form_agreement(
    label: WeylLabel,
    psi: QuaternionField,
    domain: SampleDomain,
    check_id: str = "weyl_form_agreement",
) -> FormAgreement:
    """
    Measure how far the ordered-PX and ordered-XP closed forms disagree.

    Agreement is reported, never asserted: for general labels the two forms
    differ by the unit left factor exp(2 j(x) a.a').

    Args:
        label: Weyl label shared by all samples
        psi: Wavefunction
        domain: Sample domain
        check_id: Stream identifier for the sample points

    Returns:
        FormAgreement: Max pointwise deviation and unit-norm error of the defect

    Raises:
        InsufficientSamples: If fewer than 90% of the samples are admissible
    """
    points = domain.draw_points(domain.generator(check_id))
    admissible = weyl_admissible(label, points, domain)
    used = int(admissible.sum())
    if used < MIN_ADMISSIBLE_FRACTION * len(points):
        raise InsufficientSamples(
            f"Only {used} of {len(points)} samples admissible for {label}"
        )
    x = points[admissible]

    r_min, cone = domain.r_min, domain.cone_tolerance
    px = weyl_phase(label, WeylOrdering.ORDERED_PX, x, r_min, cone)
    xp = weyl_phase(label, WeylOrdering.ORDERED_XP, x, r_min, cone)
    values = psi(x - label.a)
    gap = (xp * values - px * values).components()
    deviation = float(np.max(np.abs(gap), initial=0.0))
    defect = xp * px.conj()
    norm_error = float(np.max(np.abs(defect.norm() - 1.0), initial=0.0))

    logger.debug("Weyl form agreement for %s: deviation %.3e", label, deviation)
    return FormAgreement(
        samples_used=used,
        samples_skipped=len(points) - used,
        max_deviation=deviation,
        defect_norm_error=norm_error,
        agrees=deviation <= AGREEMENT_TOLERANCE,
    )


def ordering_defect(
    alpha: WeylLabel,
    beta: WeylLabel,
    y: Any,
    ordering: WeylOrdering,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> Quaternion:
    """
    Defect derived from the operator ordering.

    m(a, b; y) exp(j(y)[(1 - c) b.a' - c a.b']) for T = U V exp(c a.a' J).
    """
    c = CENTRAL_COEFFICIENT[ordering]
    y_arr = np.asarray(y, dtype=float)
    kappa = (1.0 - c) * _dot(beta.a, alpha.a_prime) - c * _dot(alpha.a, beta.a_prime)
    m = multiplier_m(alpha.a, beta.a, y_arr, r_min, cone_tolerance)
    return m * qexp_pure(jdir(y_arr, r_min), kappa)


def predicted_defect(
    alpha: WeylLabel,
    beta: WeylLabel,
    y: Any,
    phase_sign: int = FROZEN_WEYL_CONVENTION.phase_sign,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> Quaternion:
    """The composition-law phase m(a, b; y) exp(s (1/2) j(y)(a.b' - b.a'))"""
    y_arr = np.asarray(y, dtype=float)
    m = multiplier_m(alpha.a, beta.a, y_arr, r_min, cone_tolerance)
    theta = 0.5 * phase_sign * alpha.symplectic_pairing(beta)
    return m * qexp_pure(jdir(y_arr, r_min), theta)


@dataclass
class ComposeDefect:
    """Pointwise composition defects and their predicted values"""

    defect: Quaternion
    predicted: Quaternion
    used: np.ndarray

    @property
    def samples_used(self) -> int:
        return int(self.used.sum())

    @property
    def samples_skipped(self) -> int:
        return int(self.used.size - self.used.sum())

    def max_deviation(self) -> float:
        """Largest component deviation from the prediction over used samples"""
        diff = (self.defect - self.predicted).components()[self.used]
        return float(np.max(np.abs(diff), initial=0.0))

    def max_norm_error(self) -> float:
        """Largest departure of |D| from 1 over used samples"""
        return float(np.max(np.abs(self.defect.norm()[self.used] - 1.0), initial=0.0))


def weyl_compose_defect(
    alpha: WeylLabel,
    beta: WeylLabel,
    psi: QuaternionField,
    x: Any,
    convention: WeylConvention = FROZEN_WEYL_CONVENTION,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> ComposeDefect:
    """
    Extract D with T(alpha)T(beta)psi(x) = Phi_{alpha+beta}(x) D psi(y).

    D is solved pointwise by left division with the T(alpha + beta) phase and
    right division by psi(y), y = x - a - b. Samples where |psi(y)| < 1e-8
    are skipped.

    Args:
        alpha: Outer label (a, a')
        beta: Inner label (b, b')
        psi: Wavefunction
        x: Evaluation points, shape (N, 3)
        convention: Ordering of T and sign of the predicted phase
        r_min: Exclusion radius
        cone_tolerance: Antipodal margin

    Returns:
        ComposeDefect: Extracted and predicted defects with the used-sample mask

    Raises:
        InsufficientSamples: If more than half of the samples are skipped
    """
    x_arr = np.asarray(x, dtype=float)
    y = x_arr - alpha.a - beta.a
    ordering = convention.ordering

    composed = weyl_T(
        alpha, ordering, weyl_field(beta, ordering, psi, r_min, cone_tolerance), x_arr,
        r_min, cone_tolerance,
    )
    total_phase = weyl_phase(alpha + beta, ordering, x_arr, r_min, cone_tolerance)
    base = psi(y)
    used = np.asarray(base.norm() >= PSI_FLOOR)
    if used.size and used.sum() < (1.0 - MAX_SKIPPED_FRACTION) * used.size:
        raise InsufficientSamples("More than half of the samples have |psi| below 1e-8")

    safe_base = Quaternion(
        np.where(used, base.w, 1.0), np.where(used[..., None], base.v, 0.0)
    )
    defect = total_phase.conj() * composed * safe_base.inverse()
    predicted = predicted_defect(
        alpha, beta, y, convention.phase_sign, r_min, cone_tolerance
    )
    return ComposeDefect(defect=defect, predicted=predicted, used=used)


@dataclass
class ConventionSelection:
    """Outcome of the composition-law oracle over all candidate conventions"""

    selected: Optional[WeylConvention]
    deviations: Dict[Tuple[str, int], List[float]] = field(default_factory=dict)
    samples_used: int = 0
    samples_skipped: int = 0

    def margin(self) -> float:
        """Largest deviation of the selected candidate across the mixed sectors"""
        if self.selected is None:
            return float("inf")
        key = (self.selected.ordering.value, self.selected.phase_sign)
        return max(self.deviations[key])


def mixed_sector_labels(
    rng: np.random.Generator, count: int, scale: float = 1.0
) -> List[Tuple[WeylLabel, WeylLabel]]:
    """
    Label pairs for the two mixed orderings, translation x position and back.

    Returns:
        list: [((a, 0), (0, b')), ((0, a'), (b, 0))] with batched vectors
    """
    zeros = np.zeros((count, 3))
    first = rng.uniform(-scale, scale, (count, 3))
    second = rng.uniform(-scale, scale, (count, 3))
    return [
        (WeylLabel(first, zeros), WeylLabel(zeros, second)),
        (WeylLabel(zeros, first), WeylLabel(second, zeros)),
    ]


def select_weyl_convention(
    psi: QuaternionField,
    domain: SampleDomain,
    tolerance: float = AGREEMENT_TOLERANCE,
    check_id: str = "weyl_convention_oracle",
) -> ConventionSelection:
    """
    Brute-force oracle fixing the Weyl ordering and the phase sign.

    Every ordering and sign is tested against the composition law on both
    mixed sectors; the convention is selected only if exactly one candidate
    matches both to within tolerance.

    Args:
        psi: Wavefunction
        domain: Sample domain
        tolerance: Acceptance tolerance for the defect deviation
        check_id: Stream identifier

    Returns:
        ConventionSelection: The unique candidate (or None) and all deviations
    """
    rng = domain.generator(check_id)
    points = domain.draw_points(rng)
    sectors = mixed_sector_labels(rng, len(points))

    masks = [
        composition_admissible(alpha, beta, points, domain) for alpha, beta in sectors
    ]
    selection = ConventionSelection(selected=None)
    matching: List[WeylConvention] = []

    for ordering in WeylOrdering:
        for sign in (1, -1):
            candidate = WeylConvention(ordering, sign)
            deviations = []
            for (alpha, beta), mask in zip(sectors, masks):
                alpha_used = WeylLabel(alpha.a[mask], alpha.a_prime[mask])
                beta_used = WeylLabel(beta.a[mask], beta.a_prime[mask])
                result = weyl_compose_defect(
                    alpha_used, beta_used, psi, points[mask], candidate,
                    domain.r_min, domain.cone_tolerance,
                )
                deviations.append(result.max_deviation())
            selection.deviations[(ordering.value, sign)] = deviations
            if max(deviations) <= tolerance:
                matching.append(candidate)

    selection.samples_used = int(min(mask.sum() for mask in masks))
    selection.samples_skipped = len(points) - selection.samples_used
    if len(matching) == 1:
        selection.selected = matching[0]
        logger.info("Weyl convention oracle selected %s", matching[0].describe())
    else:
        logger.warning("Weyl convention oracle matched %d candidates", len(matching))
    return selection


if __name__ == "__main__":
    from monopole_quantization.kinematics.probe_function import generate_probe_function

    print("🌀 Testing the Weyl system...")
    rng = np.random.default_rng(3)
    probe = generate_probe_function(rng)
    label = WeylLabel([0.3, -0.2, 0.1], [0.5, 0.1, -0.4])
    x = np.array([[1.0, 0.5, 0.7]])
    for ordering in WeylOrdering:
        value = weyl_T(label, ordering, probe, x)[0]
        print(f"✅ T[{ordering.value}] psi(x) = {value}")
    print(f"✅ frozen convention: {FROZEN_WEYL_CONVENTION.describe()}")
