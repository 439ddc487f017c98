"""Quaternion algebra checks"""

import numpy as np

from monopole_quantization.quaternions.pauli import (
    hopf_project,
    pauli_check,
    rotate_vector,
)
from monopole_quantization.quaternions.quaternion import (
    ImaginaryUnit,
    Quaternion,
    qconj,
    qexp_pure,
    random_quaternions,
    random_unit_quaternions,
)
from monopole_quantization.verification.checks.check_context import (
    CheckContext,
    max_abs,
    suite_registry,
)
from monopole_quantization.verification.report import CheckResult

E3 = np.array([0.0, 0.0, 1.0])


def check_conjugate_norm(ctx: CheckContext, name: str) -> CheckResult:
    """conj(q) q = |q|^2 e0, relative to |q|^2"""
    q = random_quaternions(ctx.stream(name), ctx.samples)
    n2 = q.norm_squared()
    diff = (qconj(q) * q - Quaternion(n2, np.zeros(q.v.shape))).components()
    scale = np.maximum(n2, np.finfo(float).tiny)[..., None]
    return ctx.result(name, max_abs(diff / scale), ctx.config.tol_exact, ctx.samples)


def check_associativity(ctx: CheckContext, name: str) -> CheckResult:
    rng = ctx.stream(name)
    p, q, r = (random_quaternions(rng, ctx.samples) for _ in range(3))
    diff = ((p * q) * r - p * (q * r)).components()
    return ctx.result(name, max_abs(diff), ctx.config.tol_exact, ctx.samples)


def check_conjugate_antihomomorphism(ctx: CheckContext, name: str) -> CheckResult:
    """conj(p q) = conj(q) conj(p)"""
    rng = ctx.stream(name)
    p, q = random_quaternions(rng, ctx.samples), random_quaternions(rng, ctx.samples)
    diff = (qconj(p * q) - qconj(q) * qconj(p)).components()
    return ctx.result(name, max_abs(diff), ctx.config.tol_exact, ctx.samples)


def check_exp_group_law(ctx: CheckContext, name: str) -> CheckResult:
    """exp(n s) exp(n t) = exp(n (s + t)) on a shared axis"""
    rng = ctx.stream(name)
    n = ImaginaryUnit(rng.standard_normal((ctx.samples, 3)))
    s, t = rng.uniform(-np.pi, np.pi, (2, ctx.samples))
    diff = (qexp_pure(n, s) * qexp_pure(n, t) - qexp_pure(n, s + t)).components()
    return ctx.result(name, max_abs(diff), ctx.config.tol_exact, ctx.samples)


def check_exp_noncommutative(ctx: CheckContext, name: str) -> CheckResult:
    """[exp(e1 theta), exp(e2 theta)] = 2 sin^2(theta) e3, nonzero on (0, pi)"""
    theta = ctx.stream(name).uniform(1e-3, np.pi - 1e-3, ctx.samples)
    first = qexp_pure(np.array([1.0, 0.0, 0.0]), theta)
    second = qexp_pure(np.array([0.0, 1.0, 0.0]), theta)
    commutator = first * second - second * first
    expected = Quaternion(
        np.zeros(ctx.samples), 2.0 * np.sin(theta)[..., None] ** 2 * E3
    )
    error = max_abs((commutator - expected).components())
    if np.any(commutator.norm() == 0.0):
        error = float("inf")
    return ctx.result(name, error, ctx.config.tol_exact, ctx.samples)


def check_pauli_homomorphism(ctx: CheckContext, name: str) -> CheckResult:
    rng = ctx.stream(name)
    q1, q2 = random_quaternions(rng, ctx.samples), random_quaternions(rng, ctx.samples)
    return ctx.result(
        name,
        pauli_check(q1, q2),
        ctx.config.tol_exact,
        ctx.samples,
        notes="dictionary e0 = sigma0, e_k = -i sigma_k",
    )


def check_hopf_rotate_agreement(ctx: CheckContext, name: str) -> CheckResult:
    """hopf_project(s) equals rotate_vector(conj(s), e3) and has unit norm"""
    s = random_unit_quaternions(ctx.stream(name), ctx.samples)
    projected = hopf_project(s)
    diff = projected - rotate_vector(s.conj(), E3)
    norm_error = np.linalg.norm(projected, axis=-1) - 1.0
    return ctx.result(
        name,
        max_abs(diff, norm_error),
        ctx.config.tol_exact,
        ctx.samples,
        notes="hopf_project(s) = vec(conj(s) e3 s), the inverse side of rotate_vector",
    )


def check_hopf_fiber_invariance(ctx: CheckContext, name: str) -> CheckResult:
    """hopf_project(exp(e3 t) s) = hopf_project(s)"""
    rng = ctx.stream(name)
    s = random_unit_quaternions(rng, ctx.samples)
    t = rng.uniform(-np.pi, np.pi, ctx.samples)
    diff = hopf_project(qexp_pure(E3, t) * s) - hopf_project(s)
    return ctx.result(
        name,
        max_abs(diff),
        ctx.config.tol_exact,
        ctx.samples,
        notes="fiber acts by left multiplication with exp(e3 t)",
    )


def check_rotate_isometry(ctx: CheckContext, name: str) -> CheckResult:
    """Rotations preserve norms; exp(e3 pi/4) carries e1 to e2"""
    rng = ctx.stream(name)
    s = random_unit_quaternions(rng, ctx.samples)
    v = rng.uniform(-1.0, 1.0, (ctx.samples, 3))
    norm_diff = np.linalg.norm(rotate_vector(s, v), axis=-1) - np.linalg.norm(
        v, axis=-1
    )
    e1_turned = rotate_vector(qexp_pure(E3, np.pi / 4.0), [1.0, 0.0, 0.0])
    quarter = e1_turned - [0.0, 1.0, 0.0]
    return ctx.result(
        name,
        max_abs(norm_diff, quarter),
        ctx.config.tol_exact,
        ctx.samples,
        notes="rotate_vector(s, v) = vec(s (v.e) conj(s)), right-handed",
    )


CHECKS = suite_registry(
    "quat",
    {
        "conjugate_norm": check_conjugate_norm,
        "associativity": check_associativity,
        "conjugate_antihomomorphism": check_conjugate_antihomomorphism,
        "exp_group_law": check_exp_group_law,
        "exp_noncommutative": check_exp_noncommutative,
        "pauli_homomorphism": check_pauli_homomorphism,
        "hopf_rotate_agreement": check_hopf_rotate_agreement,
        "hopf_fiber_invariance": check_hopf_fiber_invariance,
        "rotate_isometry": check_rotate_isometry,
    },
)
