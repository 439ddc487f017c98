"""Coadjoint-orbit checks: invariants, structure constants and the massless chart"""

from typing import List

import numpy as np

from monopole_quantization.poincare.coadjoint import (
    ROTATION_PERIOD,
    CoadjointPoint,
    GroupFactor,
    casimirs,
    coad_apply,
    coad_word,
    pauli_lubanski,
    random_factor,
    random_point,
)
from monopole_quantization.poincare.lie_poisson import (
    ChartPositionFunction,
    CoordinateFunction,
    ScalarField,
    displayed_symplectic_matrix,
    lie_poisson_bracket,
    liouville_density,
    monopole_duality_check,
    poisson_bivector,
    structure_constants,
    symplectic_inverse_residual,
    symplectic_matrix,
)
from monopole_quantization.poincare.orbit_chart import (
    OrbitChartPoint,
    chart_to_point,
    coad_q_action_check,
    point_to_chart,
    random_chart_point,
)
from monopole_quantization.quaternions.quaternion import LEVI_CIVITA
from monopole_quantization.verification.checks.check_context import (
    CheckContext,
    max_abs,
    suite_registry,
)
from monopole_quantization.verification.report import CheckResult

WORD_BATCH = 10
MAX_WORD_LENGTH = 5
FACTOR_TRIALS = 10
DUALITY_HELICITY = 0.5
NOTED_BRACKETS = {("J1", "J2"), ("P1", "K1"), ("H", "K1"), ("K1", "K2")}


def _factors_of_each_kind(rng: np.random.Generator) -> List[GroupFactor]:
    return [
        GroupFactor.time_translation(rng.uniform(-2.0, 2.0)),
        GroupFactor.space_translation(rng.uniform(-2.0, 2.0, 3)),
        GroupFactor.rotation(rng.uniform(0.0, ROTATION_PERIOD), rng.standard_normal(3)),
        GroupFactor.boost(rng.uniform(0.0, 1.0), rng.standard_normal(3)),
    ]


def _relative(diff: np.ndarray, y: CoadjointPoint) -> np.ndarray:
    """Differences of coordinates divided by max(1, |y|)"""
    scale = np.maximum(1.0, np.sqrt(y.scale()))
    return np.asarray(diff) / scale[..., None]


def check_casimir_invariance(ctx: CheckContext, name: str) -> CheckResult:
    """C1 and C2 are invariant under random words of up to five factors"""
    rng = ctx.stream(name)
    trials = max(1, -(-ctx.samples // WORD_BATCH))
    errors = []
    for _ in range(trials):
        y = random_point(rng, WORD_BATCH)
        length = int(rng.integers(1, MAX_WORD_LENGTH + 1))
        word = [random_factor(rng) for _ in range(length)]
        moved = coad_word(word, y)
        scale = np.maximum(y.scale(), moved.scale())
        (c1, c2), (d1, d2) = casimirs(y), casimirs(moved)
        errors.append(np.abs(d1 - c1) / scale)
        errors.append(np.abs(d2 - c2) / scale**2)
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_group,
        trials * WORD_BATCH,
        notes="errors relative to |y|^2 for C1 and |y|^4 for C2",
    )


def check_pauli_lubanski_orthogonality(ctx: CheckContext, name: str) -> CheckResult:
    """-h w0 + p.w = 0, relative to |y|^3"""
    y = random_point(ctx.stream(name), ctx.samples)
    w0, w = pauli_lubanski(y)
    residual = -y.h * w0 + np.einsum("...k,...k->...", y.p, w)
    return ctx.result(
        name,
        max_abs(residual / np.maximum(1.0, y.scale() ** 1.5)),
        ctx.config.tol_exact,
        ctx.samples,
    )


def check_pauli_lubanski_covariance(ctx: CheckContext, name: str) -> CheckResult:
    """(w0, w) transforms by the (h, p) rows of the coadjoint action"""
    rng = ctx.stream(name)
    y = random_point(rng, ctx.samples)
    w0, w = pauli_lubanski(y)
    as_energy_momentum = CoadjointPoint(w0, w, np.zeros_like(w), np.zeros_like(w))
    errors = []
    for _ in range(FACTOR_TRIALS):
        for g in _factors_of_each_kind(rng):
            moved0, moved = pauli_lubanski(coad_apply(g, y))
            predicted = coad_apply(g, as_energy_momentum)
            momentum2 = np.einsum("...k,...k->...", predicted.p, predicted.p)
            scale = np.maximum(1.0, np.sqrt(predicted.h**2 + momentum2))
            errors.append(np.abs(moved0 - predicted.h) / scale)
            errors.append((moved - predicted.p) / scale[..., None])
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_group,
        ctx.samples,
        notes="w0 transforms like h and w like p",
    )


def _bracket_note() -> str:
    entries = structure_constants().nonzero_entries()
    return "derived " + ", ".join(
        f"{{{left},{right}}} = {coefficient:+g} {result}"
        for left, right, coefficient, result in entries
        if (left, right) in NOTED_BRACKETS
    )


def check_structure_antisymmetry(ctx: CheckContext, name: str) -> CheckResult:
    """c^k_ij = -c^k_ji, and brackets within the translation block (H, P) vanish"""
    table = structure_constants()
    error = max(table.antisymmetry_residual(), max_abs(table.table[:4, :4, :]))
    return ctx.result(
        name, error, ctx.config.tol_group, table.table.size, notes=_bracket_note()
    )


def check_structure_jacobi(ctx: CheckContext, name: str) -> CheckResult:
    table = structure_constants()
    return ctx.result(
        name, table.jacobi_residual(), ctx.config.tol_group, table.table.size
    )


def check_structure_regenerates_action(ctx: CheckContext, name: str) -> CheckResult:
    """Finite differences of the coadjoint action match A_i y built from the table"""
    points = random_point(ctx.stream(name), ctx.samples).as_array()
    residual = structure_constants().regeneration_residual(points)
    return ctx.result(name, residual, ctx.config.tol_operator, ctx.samples)


def _chart(ctx: CheckContext, name: str, helicity: object = None) -> OrbitChartPoint:
    return random_chart_point(ctx.stream(name), ctx.samples, helicity)


def check_chart_round_trip(ctx: CheckContext, name: str) -> CheckResult:
    """point_to_chart and chart_to_point are mutually inverse"""
    c = _chart(ctx, name)
    y = chart_to_point(c)
    back = point_to_chart(y)
    again = chart_to_point(back)
    error = max_abs(
        back.q - c.q,
        back.p - c.p,
        back.helicity - c.helicity,
        again.as_array() - y.as_array(),
    )
    return ctx.result(name, error, ctx.config.tol_exact, ctx.samples)


def check_massless_casimirs(ctx: CheckContext, name: str) -> CheckResult:
    """Chart points have C1 = C2 = 0"""
    y = chart_to_point(_chart(ctx, name))
    c1, c2 = casimirs(y)
    scale = np.maximum(1.0, y.scale())
    error = max_abs(c1 / scale, c2 / scale**2)
    return ctx.result(name, error, ctx.config.tol_exact, ctx.samples)


def check_bracket_p_q(ctx: CheckContext, name: str) -> CheckResult:
    """{p_i, q_j} = -delta_ij and {p_i, p_j} = 0 with q = k/h"""
    y = chart_to_point(_chart(ctx, name)).as_array()
    errors = []
    for i in range(3):
        for j in range(3):
            p_i = CoordinateFunction(1 + i)
            pq = lie_poisson_bracket(p_i, ChartPositionFunction(j), y)
            pp = lie_poisson_bracket(p_i, CoordinateFunction(1 + j), y)
            errors.append(pq + float(i == j))
            errors.append(pp)
    return ctx.result(name, max_abs(*errors), ctx.config.tol_operator, ctx.samples)


def check_bracket_q_q(ctx: CheckContext, name: str) -> CheckResult:
    """{q_i, q_j} = -lambda eps_ijk p_k / |p|^3"""
    c = _chart(ctx, name)
    y = chart_to_point(c).as_array()
    p_norm = np.linalg.norm(c.p, axis=-1)
    errors = []
    for i in range(3):
        for j in range(3):
            q_i, q_j = ChartPositionFunction(i), ChartPositionFunction(j)
            qq = lie_poisson_bracket(q_i, q_j, y)
            curl = np.einsum("k,...k->...", LEVI_CIVITA[i, j], c.p)
            expected = -c.helicity * curl / p_norm**3
            errors.append(qq - expected)
    return ctx.result(name, max_abs(*errors), ctx.config.tol_operator, ctx.samples)


def check_symplectic_inverse(ctx: CheckContext, name: str) -> CheckResult:
    """-Omega^-1 equals the Lie-Poisson bivector and det Omega > 0"""
    c = _chart(ctx, name)
    residual = symplectic_inverse_residual(c)
    if np.any(np.linalg.det(symplectic_matrix(c)) <= 0.0):
        residual = float("inf")
    displayed_inverse = -np.linalg.inv(displayed_symplectic_matrix(c))
    displayed = max_abs(displayed_inverse - poisson_bivector(c))
    return ctx.result(
        name,
        residual,
        ctx.config.tol_operator,
        ctx.samples,
        notes=(
            "p-p block lambda eps_abk p_k/|p|^3 inverts to the brackets; the "
            "literal dq^dp - lambda eps p dp^dp/|p|^3 coefficient leaves "
            f"residual {displayed:.3e}"
        ),
    )


def check_liouville_measure(ctx: CheckContext, name: str) -> CheckResult:
    """sqrt(det Omega) does not depend on the helicity at fixed (q, p)"""
    c = _chart(ctx, name)
    flat = OrbitChartPoint(c.q, c.p, np.zeros_like(c.helicity))
    error = max_abs(liouville_density(c) - liouville_density(flat))
    return ctx.result(
        name,
        error,
        ctx.config.tol_group,
        ctx.samples,
        notes="d^3q d^3p is a Liouville measure",
    )


def check_q_action(ctx: CheckContext, name: str) -> CheckResult:
    """Closed-form q action for translations and rotations; boosts keep helicity"""
    rng = ctx.stream(name)
    c = random_chart_point(rng, ctx.samples)
    errors = [
        coad_q_action_check(g, c)
        for _ in range(FACTOR_TRIALS)
        for g in _factors_of_each_kind(rng)
    ]
    return ctx.result(
        name,
        max_abs(np.asarray(errors)),
        ctx.config.tol_group,
        ctx.samples,
        notes="time translation q - a0 p/|p|, space translation q + a, rotation R q",
    )


def check_monopole_duality(ctx: CheckContext, name: str) -> CheckResult:
    """At lambda = 1/2 orbit brackets are monopole brackets with q and p exchanged"""
    c = _chart(ctx, name, DUALITY_HELICITY)
    residual = monopole_duality_check(c, DUALITY_HELICITY, 3.0)
    squared = monopole_duality_check(c, DUALITY_HELICITY, 2.0)
    return ctx.result(
        name,
        residual,
        ctx.config.tol_group,
        ctx.samples,
        notes=(
            "lambda = 1/2 identified with the unit monopole strength; the field "
            f"normalization x/|x|^3 matches, x/|x|^2 leaves residual {squared:.3e}"
        ),
    )


def check_rotation_period(ctx: CheckContext, name: str) -> CheckResult:
    """Coadjoint rotations have period 2 pi"""
    rng = ctx.stream(name)
    y = random_point(rng, ctx.samples)
    errors = []
    for _ in range(FACTOR_TRIALS):
        axis = rng.standard_normal(3)
        alpha = rng.uniform(0.0, 2.0 * np.pi)
        full_turn = coad_apply(GroupFactor.rotation(2.0 * np.pi, axis), y)
        shifted = coad_apply(GroupFactor.rotation(alpha + 2.0 * np.pi, axis), y)
        plain = coad_apply(GroupFactor.rotation(alpha, axis), y)
        errors.append(_relative(full_turn.as_array() - y.as_array(), y))
        errors.append(_relative(shifted.as_array() - plain.as_array(), y))
    return ctx.result(
        name,
        max_abs(*errors),
        ctx.config.tol_exact,
        ctx.samples,
        notes=(
            "the half-angle lift has period 4 pi; "
            "the coadjoint action has period 2 pi"
        ),
    )


def check_word_fusion(ctx: CheckContext, name: str) -> CheckResult:
    """Inverse boost pairs cancel and same-axis rotations fuse"""
    rng = ctx.stream(name)
    y = random_point(rng, ctx.samples)
    errors = []
    for _ in range(FACTOR_TRIALS):
        n = rng.standard_normal(3)
        zeta = rng.uniform(0.0, 1.0)
        boosts = [GroupFactor.boost(zeta, n), GroupFactor.boost(-zeta, n)]
        round_trip = coad_word(boosts, y)
        errors.append(_relative(round_trip.as_array() - y.as_array(), y))

        m = rng.standard_normal(3)
        alpha, beta = rng.uniform(0.0, ROTATION_PERIOD, 2)
        fused = coad_apply(GroupFactor.rotation(alpha + beta, m), y)
        rotations = [GroupFactor.rotation(alpha, m), GroupFactor.rotation(beta, m)]
        pair = coad_word(rotations, y)
        errors.append(_relative(fused.as_array() - pair.as_array(), y))
    return ctx.result(name, max_abs(*errors), ctx.config.tol_exact, ctx.samples)


def check_leibniz(ctx: CheckContext, name: str) -> CheckResult:
    """{f g, h} = f {g, h} + g {f, h} and {f, f} = 0 on finite-difference gradients"""
    rng = ctx.stream(name)
    y = random_point(rng, ctx.samples).as_array()
    u, v, w = (0.5 * rng.standard_normal(10) for _ in range(3))
    f = ScalarField(lambda z: np.sin(z @ u))
    g = ScalarField(lambda z: np.cos(z @ v))
    product = ScalarField(lambda z: np.sin(z @ u) * np.cos(z @ v))
    h = ScalarField(lambda z: z @ w, lambda z: np.broadcast_to(w, z.shape).copy())

    leibniz = lie_poisson_bracket(product, h, y) - (
        f(y) * lie_poisson_bracket(g, h, y) + g(y) * lie_poisson_bracket(f, h, y)
    )
    antisymmetry = lie_poisson_bracket(f, g, y) + lie_poisson_bracket(g, f, y)
    return ctx.result(
        name,
        max_abs(leibniz, antisymmetry, lie_poisson_bracket(f, f, y)),
        ctx.config.tol_operator,
        ctx.samples,
    )


CHECKS = suite_registry(
    "orbit",
    {
        "casimir_invariance": check_casimir_invariance,
        "pauli_lubanski_orthogonality": check_pauli_lubanski_orthogonality,
        "pauli_lubanski_covariance": check_pauli_lubanski_covariance,
        "structure_antisymmetry": check_structure_antisymmetry,
        "structure_jacobi": check_structure_jacobi,
        "structure_regenerates_action": check_structure_regenerates_action,
        "chart_round_trip": check_chart_round_trip,
        "massless_casimirs": check_massless_casimirs,
        "bracket_p_q": check_bracket_p_q,
        "bracket_q_q": check_bracket_q_q,
        "symplectic_inverse": check_symplectic_inverse,
        "liouville_measure": check_liouville_measure,
        "q_action": check_q_action,
        "monopole_duality": check_monopole_duality,
        "rotation_period": check_rotation_period,
        "word_fusion": check_word_fusion,
        "leibniz": check_leibniz,
    },
)
