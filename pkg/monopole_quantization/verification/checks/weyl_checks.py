"""Weyl-system checks: closed forms, composition laws and the convention oracle"""

from typing import Tuple

import numpy as np

from monopole_quantization.errors import InsufficientSamples
from monopole_quantization.kinematics.cocycle import multiplier_m
from monopole_quantization.kinematics.probe_function import ProbeFunction
from monopole_quantization.quaternions.quaternion import Quaternion, jdir, qexp_pure
from monopole_quantization.verification.checks.check_context import (
    CheckContext,
    max_abs,
    suite_registry,
)
from monopole_quantization.verification.report import CheckResult
from monopole_quantization.weyl.weyl_system import (
    MIN_ADMISSIBLE_FRACTION,
    ComposeDefect,
    WeylLabel,
    WeylOrdering,
    composition_admissible,
    ordering_defect,
    select_weyl_convention,
    weyl_admissible,
    weyl_compose_defect,
    weyl_form_agreement,
    weyl_phase,
)

LABEL_SCALE = 1.0


def _label(
    rng: np.random.Generator, translation: bool, position: bool, count: int = 0
) -> WeylLabel:
    shape = (count, 3) if count else (3,)
    zeros = np.zeros(shape)
    a = rng.uniform(-LABEL_SCALE, LABEL_SCALE, shape) if translation else zeros
    a_prime = rng.uniform(-LABEL_SCALE, LABEL_SCALE, shape) if position else zeros
    return WeylLabel(a, a_prime)


def _restrict(label: WeylLabel, mask: np.ndarray) -> WeylLabel:
    return WeylLabel(label.a[mask], label.a_prime[mask])


def _compose(
    ctx: CheckContext,
    rng: np.random.Generator,
    psi: ProbeFunction,
    alpha: WeylLabel,
    beta: WeylLabel,
) -> Tuple[ComposeDefect, WeylLabel, WeylLabel, np.ndarray, int]:
    """Composition defects over admissible samples, with restricted labels and points"""
    x = ctx.domain.draw_points(rng)
    mask = composition_admissible(alpha, beta, x, ctx.domain)
    alpha, beta, x_used = _restrict(alpha, mask), _restrict(beta, mask), x[mask]
    result = weyl_compose_defect(
        alpha,
        beta,
        psi,
        x_used,
        ctx.config.weyl_convention,
        ctx.domain.r_min,
        ctx.domain.cone_tolerance,
    )
    return result, alpha, beta, x_used, len(x) - int(mask.sum())


def _sector_result(
    ctx: CheckContext,
    name: str,
    translation: Tuple[bool, bool],
    position: Tuple[bool, bool],
) -> Tuple[ComposeDefect, WeylLabel, WeylLabel, np.ndarray, int]:
    rng = ctx.stream(name)
    psi = ctx.probe(rng)
    alpha = _label(rng, translation[0], position[0], ctx.samples)
    beta = _label(rng, translation[1], position[1], ctx.samples)
    return _compose(ctx, rng, psi, alpha, beta)


def _used_defect(result: ComposeDefect) -> Quaternion:
    return result.defect[result.used]


def _form_check(
    ctx: CheckContext, name: str, translation: bool, position: bool
) -> CheckResult:
    rng = ctx.stream(name)
    psi = ctx.probe(rng)
    label = _label(rng, translation, position)
    agreement = weyl_form_agreement(label, psi, ctx.domain, f"{name}:points")
    return ctx.result(
        name,
        agreement.max_deviation,
        ctx.config.tol_exact,
        agreement.samples_used,
        agreement.samples_skipped,
    )


def check_form_agreement_translation(ctx: CheckContext, name: str) -> CheckResult:
    """Both closed forms reduce to U(a) for labels (a, 0)"""
    return _form_check(ctx, name, translation=True, position=False)


def check_form_agreement_position(ctx: CheckContext, name: str) -> CheckResult:
    """Both closed forms reduce to exp(j(x) a'.x) for labels (0, a')"""
    return _form_check(ctx, name, translation=False, position=True)


def check_form_defect_general(ctx: CheckContext, name: str) -> CheckResult:
    """
    For general labels the two forms differ by the unit left factor exp(2 j(x) a.a').

    The deviation between the forms is reported; the check asserts that the
    defect is that unit factor.
    """
    rng = ctx.stream(name)
    psi = ctx.probe(rng)
    label = _label(rng, True, True)
    agreement = weyl_form_agreement(label, psi, ctx.domain, f"{name}:points")

    x = ctx.domain.draw_points(rng)
    x = x[weyl_admissible(label, x, ctx.domain)]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    px = weyl_phase(label, WeylOrdering.ORDERED_PX, x, r, cone)
    xp = weyl_phase(label, WeylOrdering.ORDERED_XP, x, r, cone)
    expected = qexp_pure(jdir(x, r), 2.0 * float(np.dot(label.a, label.a_prime)))
    factor_error = (xp * px.conj() - expected).components()
    error = max_abs(agreement.defect_norm_error, factor_error)
    return ctx.result(
        name,
        error,
        ctx.config.tol_group,
        agreement.samples_used,
        agreement.samples_skipped,
        notes=(
            "ordered-PX and ordered-XP disagree by up to "
            f"{agreement.max_deviation:.3e}; "
            "ordered-XP = exp(2 j(x) a.a') ordered-PX"
        ),
    )


def check_translation_sector(ctx: CheckContext, name: str) -> CheckResult:
    """alpha = (a, 0), beta = (b, 0): the defect is m(a, b; x - a - b)"""
    result, alpha, beta, x, skipped = _sector_result(
        ctx, name, (True, True), (False, False)
    )
    y = x - alpha.a - beta.a
    m = multiplier_m(alpha.a, beta.a, y, ctx.domain.r_min, ctx.domain.cone_tolerance)
    error = max_abs((_used_defect(result) - m[result.used]).components())
    return ctx.result(
        name,
        error,
        ctx.config.tol_exact,
        result.samples_used,
        skipped + result.samples_skipped,
    )


def check_position_sector(ctx: CheckContext, name: str) -> CheckResult:
    """alpha = (0, a'), beta = (0, b'): the defect is 1"""
    result, _, _, _, skipped = _sector_result(ctx, name, (False, False), (True, True))
    defect = _used_defect(result)
    error = max_abs((defect - Quaternion.one(defect.shape)).components())
    return ctx.result(
        name,
        error,
        ctx.config.tol_exact,
        result.samples_used,
        skipped + result.samples_skipped,
    )


def check_defect_unitarity(ctx: CheckContext, name: str) -> CheckResult:
    """Defects of general compositions are unit quaternions"""
    result, _, _, _, skipped = _sector_result(ctx, name, (True, True), (True, True))
    return ctx.result(
        name,
        result.max_norm_error(),
        ctx.config.tol_group,
        result.samples_used,
        skipped + result.samples_skipped,
    )


def check_mixed_sector(ctx: CheckContext, name: str) -> CheckResult:
    """Translation x position and position x translation match the composition law"""
    convention = ctx.config.weyl_convention
    errors, used, skipped = [], 0, 0
    for tag, translation, position in (
        ("translation-position", (True, False), (False, True)),
        ("position-translation", (False, True), (True, False)),
    ):
        result, _, _, _, dropped = _sector_result(
            ctx, f"{name}:{tag}", translation, position
        )
        errors.append(result.max_deviation())
        errors.append(result.max_norm_error())
        used += result.samples_used
        skipped += dropped + result.samples_skipped
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_group,
        used,
        skipped,
        notes=convention.describe(),
    )


def check_general_composition(ctx: CheckContext, name: str) -> CheckResult:
    """General labels match both the composition law and the ordering-derived law"""
    result, alpha, beta, x, skipped = _sector_result(
        ctx, name, (True, True), (True, True)
    )
    y = x - alpha.a - beta.a
    derived = ordering_defect(
        alpha,
        beta,
        y,
        ctx.config.weyl_convention.ordering,
        ctx.domain.r_min,
        ctx.domain.cone_tolerance,
    )
    error = max_abs(
        result.max_deviation(),
        (_used_defect(result) - derived[result.used]).components(),
    )
    return ctx.result(
        name,
        error,
        ctx.config.tol_group,
        result.samples_used,
        skipped + result.samples_skipped,
        notes=ctx.config.weyl_convention.describe(),
    )


def check_convention_oracle(ctx: CheckContext, name: str) -> CheckResult:
    """The brute-force oracle selects exactly the configured convention"""
    rng = ctx.stream(name)
    psi = ctx.probe(rng)
    selection = select_weyl_convention(psi, ctx.domain, ctx.config.tol_group, name)
    matches = selection.selected == ctx.config.weyl_convention
    scores = "; ".join(
        f"{ordering}/{sign:+d}: {max(devs):.3e}"
        for (ordering, sign), devs in sorted(selection.deviations.items())
    )
    if selection.selected:
        chosen = selection.selected.describe()
    else:
        chosen = "no unique candidate"
    if selection.samples_used < MIN_ADMISSIBLE_FRACTION * ctx.samples:
        raise InsufficientSamples(
            f"Only {selection.samples_used} admissible oracle samples"
        )
    return ctx.result(
        name,
        selection.margin() if matches else float("inf"),
        ctx.config.tol_group,
        selection.samples_used,
        selection.samples_skipped,
        notes=f"selected {chosen}; max deviations {scores}",
    )


def check_phase_separation(ctx: CheckContext, name: str) -> CheckResult:
    """Labels with a.b' - b.a' = 0 isolate the multiplier"""
    rng = ctx.stream(name)
    psi = ctx.probe(rng)
    a = rng.uniform(-LABEL_SCALE, LABEL_SCALE, (ctx.samples, 3))
    b = rng.uniform(-LABEL_SCALE, LABEL_SCALE, (ctx.samples, 3))
    kappa = rng.uniform(-1.0, 1.0, (ctx.samples, 1))
    alpha, beta = WeylLabel(a, kappa * a), WeylLabel(b, kappa * b)
    result, alpha, beta, x, skipped = _compose(ctx, rng, psi, alpha, beta)
    y = x - alpha.a - beta.a
    m = multiplier_m(alpha.a, beta.a, y, ctx.domain.r_min, ctx.domain.cone_tolerance)
    error = max_abs(
        result.max_deviation(),
        (_used_defect(result) - m[result.used]).components(),
    )
    return ctx.result(
        name,
        error,
        ctx.config.tol_group,
        result.samples_used,
        skipped + result.samples_skipped,
        notes="with a.b' = b.a' only the multiplier m(a, b; x - a - b) remains",
    )


CHECKS = suite_registry(
    "weyl",
    {
        "form_agreement_translation": check_form_agreement_translation,
        "form_agreement_position": check_form_agreement_position,
        "form_defect_general": check_form_defect_general,
        "translation_sector": check_translation_sector,
        "position_sector": check_position_sector,
        "defect_unitarity": check_defect_unitarity,
        "mixed_sector": check_mixed_sector,
        "general_composition": check_general_composition,
        "convention_oracle": check_convention_oracle,
        "phase_separation": check_phase_separation,
    },
)
