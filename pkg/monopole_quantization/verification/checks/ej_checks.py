"""Checks of cocycle translations, the multiplier and the monopole operator calculus.

Samples that violate a precondition are filtered with the admissibility
masks and counted as skipped. Finite-difference checks draw their points
with a radial margin so every stencil point stays regular.
"""

from typing import Tuple

import numpy as np

from monopole_quantization.finite_difference import (
    central_derivative,
    directional_derivative,
)
from monopole_quantization.kinematics.cocycle import (
    apply_M,
    apply_U,
    cocycle_w,
    geometric_phase_admissible,
    geometric_phase_ratio,
    multiplier_m,
    translated_field,
)
from monopole_quantization.kinematics.operators import (
    FIELD_FD_ORDER,
    apply_J,
    apply_L,
    apply_nabla,
    apply_P,
    apply_X,
    connection_A,
    connection_derivative,
    curvature,
    curvature_check,
    j_field,
    l_field,
    monopole_field_phase,
    nabla_field,
    p_field,
    presymplectic_extract,
    x_field,
)
from monopole_quantization.quaternions.pauli import rotate_vector
from monopole_quantization.quaternions.quaternion import LEVI_CIVITA, Quaternion
from monopole_quantization.verification.checks.check_context import (
    CheckContext,
    all_admissible,
    max_abs,
    suite_registry,
)
from monopole_quantization.verification.report import CheckResult

TRANSLATION_SCALE = 1.0
AXES = np.eye(3)
AXIS_PAIRS = [(i, j) for i in range(3) for j in range(3)]
LEFT_MULTIPLICATION_NOTE = "phases act on wavefunction values by left multiplication"


def _unit_sphere(points: np.ndarray) -> np.ndarray:
    return points / np.linalg.norm(points, axis=-1)[..., None]


def _diff(q1: Quaternion, q2: Quaternion) -> np.ndarray:
    return (q1 - q2).components()


def _fd_margin(ctx: CheckContext) -> float:
    # stencils reach two steps along directions of length up to sqrt(3) box
    return 4.0 * ctx.config.fd_step * np.sqrt(3.0) * ctx.config.box


def _points_and_translations(
    ctx: CheckContext, name: str, count: int = 1
) -> Tuple[np.random.Generator, np.ndarray, Tuple[np.ndarray, ...]]:
    rng = ctx.stream(name)
    x = ctx.domain.draw_points(rng)
    translations = tuple(
        ctx.domain.draw_vectors(rng, TRANSLATION_SCALE) for _ in range(count)
    )
    return rng, x, translations


def check_cocycle_identity(ctx: CheckContext, name: str) -> CheckResult:
    """w(0; x) = 1"""
    x = ctx.domain.draw_points(ctx.stream(name))
    w = cocycle_w(np.zeros_like(x), x, ctx.domain.r_min, ctx.domain.cone_tolerance)
    error = max_abs(_diff(w, Quaternion.one(w.shape)))
    return ctx.result(name, error, ctx.config.tol_exact, len(x))


def check_cocycle_unitarity(ctx: CheckContext, name: str) -> CheckResult:
    """w(a; x) w*(a; x) = 1"""
    _, x, (a,) = _points_and_translations(ctx, name)
    mask = ctx.domain.translation_admissible(a, x)
    w = cocycle_w(a[mask], x[mask], ctx.domain.r_min, ctx.domain.cone_tolerance)
    error = max_abs(_diff(w * w.conj(), Quaternion.one(w.shape)))
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def check_cocycle_inversion(ctx: CheckContext, name: str) -> CheckResult:
    """w(a; x - a) = w*(-a; x)"""
    _, x, (a,) = _points_and_translations(ctx, name)
    admissible = ctx.domain.translation_admissible
    mask = admissible(a, x - a) & admissible(-a, x)
    a, x = a[mask], x[mask]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    inverse = cocycle_w(-a, x, r, cone).conj()
    error = max_abs(_diff(cocycle_w(a, x - a, r, cone), inverse))
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def check_cocycle_ray_composition(ctx: CheckContext, name: str) -> CheckResult:
    """w(t a; x + s a) w(s a; x) = w((s + t) a; x)"""
    rng, x, (a,) = _points_and_translations(ctx, name)
    s, t = (rng.uniform(-1.0, 1.0, (len(x), 1)) for _ in range(2))
    moves = [(t * a, x + s * a), (s * a, x), ((s + t) * a, x)]
    mask = all_admissible(ctx.domain, moves)
    a, x, s, t = a[mask], x[mask], s[mask], t[mask]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    lhs = cocycle_w(t * a, x + s * a, r, cone) * cocycle_w(s * a, x, r, cone)
    error = max_abs(_diff(lhs, cocycle_w((s + t) * a, x, r, cone)))
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def check_cocycle_rotation_covariance(ctx: CheckContext, name: str) -> CheckResult:
    """w(a; x) rotates the direction of x onto the direction of x + a"""
    _, x, (a,) = _points_and_translations(ctx, name)
    mask = ctx.domain.translation_admissible(a, x)
    a, x = a[mask], x[mask]
    w = cocycle_w(a, x, ctx.domain.r_min, ctx.domain.cone_tolerance)
    error = max_abs(rotate_vector(w, _unit_sphere(x)) - _unit_sphere(x + a))
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def check_j_translation_covariance(ctx: CheckContext, name: str) -> CheckResult:
    """U(a) J = J U(a) pointwise"""
    rng, x, (a,) = _points_and_translations(ctx, name)
    psi = ctx.probe(rng)
    mask = ctx.domain.translation_admissible(a, x - a)
    a, x = a[mask], x[mask]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    lhs = apply_U(a, j_field(psi, r), x, r, cone)
    rhs = apply_J(apply_U(a, psi, x, r, cone), x, r)
    return ctx.result(
        name, max_abs(_diff(lhs, rhs)), ctx.config.tol_exact, mask.sum(), (~mask).sum()
    )


def check_projective_composition(ctx: CheckContext, name: str) -> CheckResult:
    """U(a) U(b) psi = U(a + b) M(a, b) psi"""
    rng, x, (a, b) = _points_and_translations(ctx, name, 2)
    psi = ctx.probe(rng)
    y = x - a - b
    mask = all_admissible(ctx.domain, [(a, x - a), (b, y), (a + b, y)])
    a, b, x = a[mask], b[mask], x[mask]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    lhs = apply_U(a, translated_field(b, psi, r, cone), x, r, cone)
    rhs = apply_U(a + b, lambda z: apply_M(a, b, psi, z, r, cone), x, r, cone)
    return ctx.result(
        name,
        max_abs(_diff(lhs, rhs)),
        ctx.config.tol_exact,
        mask.sum(),
        (~mask).sum(),
        notes=LEFT_MULTIPLICATION_NOTE,
    )


def check_multiplier_inverse_pair(ctx: CheckContext, name: str) -> CheckResult:
    """m(a, -a; x) = 1, m(a, 0; x) = 1 and m(0, a; x) = 1"""
    _, x, (a,) = _points_and_translations(ctx, name)
    admissible = ctx.domain.translation_admissible
    mask = admissible(-a, x) & admissible(a, x)
    a, x = a[mask], x[mask]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    one = Quaternion.one((len(x),))
    zero = np.zeros_like(a)
    error = max_abs(
        _diff(multiplier_m(a, -a, x, r, cone), one),
        _diff(multiplier_m(a, zero, x, r, cone), one),
        _diff(multiplier_m(zero, a, x, r, cone), one),
    )
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def check_multiplier_planar(ctx: CheckContext, name: str) -> CheckResult:
    """m(a, b; x) = 1 when x, a and b span a plane through the origin"""
    rng, x, (a,) = _points_and_translations(ctx, name)
    s, t = (rng.uniform(-0.5, 0.5, (len(x), 1)) for _ in range(2))
    b = s * x + t * a
    mask = all_admissible(ctx.domain, [(a + b, x), (a, x + b), (b, x)])
    a, b, x = a[mask], b[mask], x[mask]
    m = multiplier_m(a, b, x, ctx.domain.r_min, ctx.domain.cone_tolerance)
    error = max_abs(_diff(m, Quaternion.one(m.shape)))
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def check_associativity(ctx: CheckContext, name: str) -> CheckResult:
    """
    Triple products agree in every bracketing.

    U(a)U(b)U(c) psi is compared with U(a+b+c)M(a,b+c)M(b,c) psi and with
    U(a+b)M(a,b)U(c) psi, each expanded into independent cocycles.
    """
    rng, x, (a, b, c) = _points_and_translations(ctx, name, 3)
    psi = ctx.probe(rng)
    y = x - a - b - c
    mask = all_admissible(
        ctx.domain,
        [
            (a, x - a),
            (b, y + c),
            (c, y),
            (a + b + c, y),
            (b + c, y),
            (a + b, y + c),
        ],
    )
    a, b, c, x, y = a[mask], b[mask], c[mask], x[mask], y[mask]
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    base = psi(y)

    nested = translated_field(b, translated_field(c, psi, r, cone), r, cone)
    direct = apply_U(a, nested, x, r, cone)
    inner_first = (
        cocycle_w(a + b + c, y, r, cone)
        * multiplier_m(a, b + c, y, r, cone)
        * multiplier_m(b, c, y, r, cone)
        * base
    )
    outer_first = (
        cocycle_w(a + b, y + c, r, cone)
        * multiplier_m(a, b, y + c, r, cone)
        * cocycle_w(c, y, r, cone)
        * base
    )
    error = max_abs(_diff(direct, inner_first), _diff(direct, outer_first))
    return ctx.result(name, error, ctx.config.tol_exact, mask.sum(), (~mask).sum())


def _geometric_phase_ratios(ctx: CheckContext, name: str) -> Tuple[np.ndarray, int]:
    _, x, (a, b) = _points_and_translations(ctx, name, 2)
    r, cone = ctx.domain.r_min, ctx.domain.cone_tolerance
    mask = geometric_phase_admissible(a, b, x, r, cone)
    ratios = geometric_phase_ratio(a[mask], b[mask], x[mask], r, cone)
    return np.asarray(ratios), len(x)


def _phase_note(constant: float) -> str:
    sign = "+" if constant > 0 else "-"
    return (
        f"fitted constant {constant:.12f} (sign {sign}) for phase(m(a,b;x)) about j(x) "
        "over the solid angle of x -> x+b -> x+a+b"
    )


def check_geometric_phase_constancy(ctx: CheckContext, name: str) -> CheckResult:
    """phase(m) / solid angle is the same for every configuration"""
    ratios, total = _geometric_phase_ratios(ctx, name)
    if ratios.size == 0:
        return ctx.result(name, float("nan"), ctx.config.tol_fd, 0, total)
    constant = float(np.median(ratios))
    return ctx.result(
        name,
        max_abs(ratios - constant),
        ctx.config.tol_fd,
        ratios.size,
        total - ratios.size,
        notes=_phase_note(constant),
    )


def check_geometric_phase_magnitude(ctx: CheckContext, name: str) -> CheckResult:
    """The fitted constant has magnitude 1/2; its sign is reported"""
    ratios, total = _geometric_phase_ratios(ctx, name)
    if ratios.size == 0:
        return ctx.result(name, float("nan"), ctx.config.tol_fd, 0, total)
    constant = float(np.median(ratios))
    return ctx.result(
        name,
        abs(abs(constant) - 0.5),
        ctx.config.tol_fd,
        ratios.size,
        total - ratios.size,
        notes=_phase_note(constant),
    )


def _fd_points(ctx: CheckContext, name: str) -> Tuple[np.random.Generator, np.ndarray]:
    rng = ctx.stream(name)
    return rng, ctx.domain.draw_points(rng, margin=_fd_margin(ctx))


def check_nabla_generator_fd(ctx: CheckContext, name: str) -> CheckResult:
    """nabla_u psi = -d/dt U(t u) psi at t = 0"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    u = rng.standard_normal((len(x), 3))
    u = _unit_sphere(u)
    r, cone, h = ctx.domain.r_min, ctx.domain.cone_tolerance, ctx.config.fd_step
    derivative = central_derivative(
        lambda t: apply_U(t * u, psi, x, r, cone), h, FIELD_FD_ORDER
    )
    error = max_abs(_diff(apply_nabla(u, psi, x, r, h), -1.0 * derivative))
    return ctx.result(
        name,
        error,
        ctx.config.tol_fd,
        len(x),
        notes="nabla_u = (u.d) + (1/2)(u x x).e/|x|^2 equals minus d/dt U(tu) at t = 0",
    )


def check_gccr_nabla_x(ctx: CheckContext, name: str) -> CheckResult:
    """[nabla_i, X_j] psi = delta_ij psi"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    r, h = ctx.domain.r_min, ctx.config.fd_step
    value = psi(x)
    errors = []
    for i, j in AXIS_PAIRS:
        commutator = apply_nabla(AXES[i], x_field(j, psi), x, r, h) - apply_X(
            j, apply_nabla(AXES[i], psi, x, r, h), x
        )
        errors.append(_diff(commutator, float(i == j) * value))
    return ctx.result(name, max_abs(*errors), ctx.config.tol_operator, len(x))


def check_gccr_x_x(ctx: CheckContext, name: str) -> CheckResult:
    """[X_i, X_j] psi = 0"""
    rng = ctx.stream(name)
    x = ctx.domain.draw_points(rng)
    psi = ctx.probe(rng)
    value = psi(x)
    errors = [
        _diff(apply_X(i, apply_X(j, value, x), x), apply_X(j, apply_X(i, value, x), x))
        for i, j in AXIS_PAIRS
    ]
    return ctx.result(name, max_abs(*errors), ctx.config.tol_exact, len(x))


def check_gccr_curvature(ctx: CheckContext, name: str) -> CheckResult:
    """[nabla_i, nabla_j] psi = -(1/2) eps_ijk (x_k/|x|^3) j(x) psi"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    r, h = ctx.domain.r_min, ctx.config.fd_step
    errors = []
    for i, j in AXIS_PAIRS:
        ij = apply_nabla(AXES[i], nabla_field(AXES[j], psi, r, h), x, r, h)
        ji = apply_nabla(AXES[j], nabla_field(AXES[i], psi, r, h), x, r, h)
        commutator = ij - ji
        errors.append(_diff(commutator, monopole_field_phase(i, j, x, r) * psi(x)))
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_operator,
        len(x),
        notes=LEFT_MULTIPLICATION_NOTE,
    )


def check_curvature_formula(ctx: CheckContext, name: str) -> CheckResult:
    """Analytic d_i A_j - d_j A_i + [A_i, A_j] equals the monopole field"""
    rng = ctx.stream(name)
    x = ctx.domain.draw_points(rng)
    psi = ctx.probe(rng)
    error = max(curvature_check(i, j, x, psi, ctx.domain.r_min) for i, j in AXIS_PAIRS)
    return ctx.result(name, error, ctx.config.tol_operator, len(x))


def check_curvature_connection_fd(ctx: CheckContext, name: str) -> CheckResult:
    """Analytic d_i A_j against finite differences of A_j"""
    _, x = _fd_points(ctx, name)
    r, h = ctx.domain.r_min, ctx.config.fd_step
    errors = []
    for i, j in AXIS_PAIRS:
        numeric = directional_derivative(
            lambda z: connection_A(AXES[j], z, r), x, AXES[i], h, FIELD_FD_ORDER
        )
        errors.append(_diff(connection_derivative(i, j, x, r), numeric))
    return ctx.result(name, max_abs(*errors), ctx.config.tol_fd, len(x))


def check_gccr_momentum(ctx: CheckContext, name: str) -> CheckResult:
    """[P_i, P_j] psi = +(1/2) eps_ijk (x_k/|x|^3) J psi"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    r, h = ctx.domain.r_min, ctx.config.fd_step
    radius = np.linalg.norm(x, axis=-1)
    j_psi = apply_J(psi(x), x, r)
    errors = []
    for i, j in AXIS_PAIRS:
        commutator = apply_P(i, p_field(j, psi, r, h), x, r, h) - apply_P(
            j, p_field(i, psi, r, h), x, r, h
        )
        strength = 0.5 * np.einsum("k,...k->...", LEVI_CIVITA[i, j], x) / radius**3
        errors.append(_diff(commutator, strength * j_psi))
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_operator,
        len(x),
        notes="the imaginary unit of the momentum commutator is carried by J",
    )


def check_j_nabla_commute(ctx: CheckContext, name: str) -> CheckResult:
    """J nabla_i psi = nabla_i (J psi)"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    r, h = ctx.domain.r_min, ctx.config.fd_step
    errors = [
        _diff(
            apply_J(apply_nabla(AXES[i], psi, x, r, h), x, r),
            apply_nabla(AXES[i], j_field(psi, r), x, r, h),
        )
        for i in range(3)
    ]
    return ctx.result(name, max_abs(*errors), ctx.config.tol_operator, len(x))


def check_rotation_j_commute(ctx: CheckContext, name: str) -> CheckResult:
    """[L_i, J] psi = 0"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    r, h = ctx.domain.r_min, ctx.config.fd_step
    errors = [
        _diff(apply_L(i, j_field(psi, r), x, h), apply_J(apply_L(i, psi, x, h), x, r))
        for i in range(3)
    ]
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_operator,
        len(x),
        notes=LEFT_MULTIPLICATION_NOTE,
    )


def check_rotation_closure(ctx: CheckContext, name: str) -> CheckResult:
    """[L_i, L_j] = -eps_ijk L_k"""
    rng, x = _fd_points(ctx, name)
    psi = ctx.probe(rng)
    h = ctx.config.fd_step
    errors = []
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        ij = apply_L(i, l_field(j, psi, h), x, h)
        ji = apply_L(j, l_field(i, psi, h), x, h)
        commutator = ij - ji
        errors.append(_diff(commutator, -1.0 * apply_L(k, psi, x, h)))
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_operator,
        len(x),
        notes="so(3) closure [L1, L2] = -L3 with spin part -(1/2)e_i on the left",
    )


def check_complex_structure(ctx: CheckContext, name: str) -> CheckResult:
    """J^2 = -1 and |J psi| = |psi| pointwise"""
    rng = ctx.stream(name)
    x = ctx.domain.draw_points(rng)
    value = ctx.probe(rng)(x)
    r = ctx.domain.r_min
    j_value = apply_J(value, x, r)
    error = max_abs(
        _diff(apply_J(j_value, x, r), -1.0 * value),
        j_value.norm() - value.norm(),
    )
    return ctx.result(name, error, ctx.config.tol_exact, len(x))


def check_probe_gradient_fd(ctx: CheckContext, name: str) -> CheckResult:
    """Analytic probe derivatives against second-order central differences"""
    rng = ctx.stream(name)
    x = ctx.domain.draw_points(rng)
    psi = ctx.probe(rng)
    h = ctx.config.fd_step
    errors = []
    for i in range(3):
        analytic = psi.directional_derivative(AXES[i], x)
        numeric = directional_derivative(psi, x, AXES[i], h, 2)
        scale = max(1.0, max_abs(analytic.components()))
        errors.append(_diff(analytic, numeric) / scale)
    return ctx.result(name, max_abs(*errors), ctx.config.tol_fd, len(x))


def check_presymplectic_pure(ctx: CheckContext, name: str) -> CheckResult:
    """Curvature components are pure with e_k part -(1/2) eps_ijl x_l x_k / |x|^4"""
    x = ctx.domain.draw_points(ctx.stream(name))
    r = ctx.domain.r_min
    radius = np.linalg.norm(x, axis=-1)
    errors = []
    for i, j in AXIS_PAIRS:
        omega = presymplectic_extract(i, j, x, r)
        strength = -0.5 * np.einsum("k,...k->...", LEVI_CIVITA[i, j], x) / radius**3
        errors.append(curvature(i, j, x, r).w)
        errors.append(omega + presymplectic_extract(j, i, x, r))
        errors.append(omega - strength[..., None] * _unit_sphere(x))
    return ctx.result(name, max_abs(*errors), ctx.config.tol_operator, len(x))


CHECKS = suite_registry(
    "ej",
    {
        "cocycle_identity": check_cocycle_identity,
        "cocycle_unitarity": check_cocycle_unitarity,
        "cocycle_inversion": check_cocycle_inversion,
        "cocycle_ray_composition": check_cocycle_ray_composition,
        "cocycle_rotation_covariance": check_cocycle_rotation_covariance,
        "j_translation_covariance": check_j_translation_covariance,
        "projective_composition": check_projective_composition,
        "multiplier_inverse_pair": check_multiplier_inverse_pair,
        "multiplier_planar": check_multiplier_planar,
        "associativity": check_associativity,
        "geometric_phase_constancy": check_geometric_phase_constancy,
        "geometric_phase_magnitude": check_geometric_phase_magnitude,
        "nabla_generator_fd": check_nabla_generator_fd,
        "gccr_nabla_x": check_gccr_nabla_x,
        "gccr_x_x": check_gccr_x_x,
        "gccr_curvature": check_gccr_curvature,
        "curvature_formula": check_curvature_formula,
        "curvature_connection_fd": check_curvature_connection_fd,
        "gccr_momentum": check_gccr_momentum,
        "j_nabla_commute": check_j_nabla_commute,
        "rotation_j_commute": check_rotation_j_commute,
        "rotation_closure": check_rotation_closure,
        "complex_structure": check_complex_structure,
        "probe_gradient_fd": check_probe_gradient_fd,
        "presymplectic_pure": check_presymplectic_pure,
    },
)
