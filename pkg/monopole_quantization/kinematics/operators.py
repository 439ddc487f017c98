"""Pointwise operators of the monopole calculus.

Covers the connection and its curvature, covariant derivatives, the complex
structure J, positions, momenta P_i = J nabla_i and rotation generators L_i.
Axis indices are 0, 1, 2. Operators take a wavefunction ``psi``: probe
functions are differentiated analytically, any other field by a fourth-order
central stencil.
"""

from typing import Any

import numpy as np

from monopole_quantization.errors import SingularPoint
from monopole_quantization.finite_difference import (
    DEFAULT_FD_STEP,
    directional_derivative,
)
from monopole_quantization.kinematics.probe_function import (
    ProbeFunction,
    QuaternionField,
)
from monopole_quantization.quaternions.quaternion import (
    DEFAULT_R_MIN,
    LEVI_CIVITA,
    Quaternion,
    jdir,
    max_deviation,
)

FIELD_FD_ORDER = 4


def _regular_point(x: Any, r_min: float) -> np.ndarray:
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.linalg.norm(x_arr, axis=-1) <= r_min):
        raise SingularPoint(f"Point inside the exclusion radius {r_min}")
    return x_arr


def _unit(axis: int) -> np.ndarray:
    if axis not in (0, 1, 2):
        raise ValueError(f"Axis index must be 0, 1 or 2, got {axis}")
    return np.eye(3)[axis]


def derivative_along(
    psi: QuaternionField, u: Any, x: Any, fd_step: float = DEFAULT_FD_STEP
) -> Quaternion:
    """(u . d) psi at x; analytic for probe functions, finite differences otherwise"""
    if isinstance(psi, ProbeFunction):
        return psi.directional_derivative(u, x)
    return directional_derivative(psi, x, u, fd_step, FIELD_FD_ORDER)


def connection_A(u: Any, x: Any, r_min: float = DEFAULT_R_MIN) -> Quaternion:
    """
    Gauge potential along u, the pure quaternion (1/2)(u cross x).e / |x|^2.

    Args:
        u: Direction(s)
        x: Point(s)
        r_min: Exclusion radius

    Returns:
        Quaternion: A_u(x)

    Raises:
        SingularPoint: If |x| <= r_min
    """
    x_arr = _regular_point(x, r_min)
    r2 = np.einsum("...k,...k->...", x_arr, x_arr)
    u_cross_x = np.cross(np.asarray(u, dtype=float), x_arr)
    return Quaternion.pure(0.5 * u_cross_x / r2[..., None])


def connection_derivative(
    i: int, j: int, x: Any, r_min: float = DEFAULT_R_MIN
) -> Quaternion:
    """
    Analytic partial derivative d_i A_j.

    d_i A_j = (e_j cross e_i)/(2 r^2) - (e_j cross x) x_i / r^4
    """
    x_arr = _regular_point(x, r_min)
    r2 = np.einsum("...k,...k->...", x_arr, x_arr)
    e_i, e_j = _unit(i), _unit(j)
    vector = 0.5 * np.cross(e_j, e_i) / r2[..., None] - np.cross(e_j, x_arr) * (
        x_arr[..., i] / (r2 * r2)
    )[..., None]
    return Quaternion.pure(vector)


def curvature(i: int, j: int, x: Any, r_min: float = DEFAULT_R_MIN) -> Quaternion:
    """
    Quaternion-valued curvature Omega_ij = d_i A_j - d_j A_i + [A_i, A_j].

    Args:
        i: First axis index
        j: Second axis index
        x: Point(s)
        r_min: Exclusion radius

    Returns:
        Quaternion: Omega_ij(x), a pure quaternion
    """
    a_i = connection_A(_unit(i), x, r_min)
    a_j = connection_A(_unit(j), x, r_min)
    return (
        connection_derivative(i, j, x, r_min)
        - connection_derivative(j, i, x, r_min)
        + a_i * a_j
        - a_j * a_i
    )


def monopole_field_phase(
    i: int, j: int, x: Any, r_min: float = DEFAULT_R_MIN
) -> Quaternion:
    """The stated curvature -(1/2) eps_ijk (x_k/|x|^3) j(x)"""
    x_arr = _regular_point(x, r_min)
    r = np.linalg.norm(x_arr, axis=-1)
    strength = -0.5 * np.einsum("k,...k->...", LEVI_CIVITA[i, j], x_arr) / r**3
    return strength * jdir(x_arr, r_min)


def curvature_check(
    i: int, j: int, x: Any, psi: QuaternionField, r_min: float = DEFAULT_R_MIN
) -> float:
    """
    Compare the analytic curvature acting on psi with the monopole field.

    Args:
        i: First axis index
        j: Second axis index
        x: Point(s)
        psi: Wavefunction
        r_min: Exclusion radius

    Returns:
        float: Max deviation between Omega_ij psi(x) and
        -(1/2) eps_ijk (x_k/|x|^3) j(x) psi(x)
    """
    value = psi(np.asarray(x, dtype=float))
    return max_deviation(
        curvature(i, j, x, r_min) * value, monopole_field_phase(i, j, x, r_min) * value
    )


def presymplectic_extract(
    i: int, j: int, x: Any, r_min: float = DEFAULT_R_MIN
) -> np.ndarray:
    """
    Real presymplectic components (omega_1, omega_2, omega_3) on the pair (i, j).

    omega_k is the scalar part of conj(e_k) Omega_ij, i.e. the e_k component
    of the curvature.
    """
    omega = curvature(i, j, x, r_min)
    return np.stack(
        [(Quaternion.basis(k + 1).conj() * omega).w for k in range(3)], axis=-1
    )


def apply_nabla(
    u: Any,
    psi: QuaternionField,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    fd_step: float = DEFAULT_FD_STEP,
) -> Quaternion:
    """
    Covariant derivative (u . d) psi + A_u psi.

    Args:
        u: Direction(s)
        psi: Wavefunction
        x: Point(s)
        r_min: Exclusion radius
        fd_step: Stencil spacing for fields without analytic derivatives

    Returns:
        Quaternion: (nabla_u psi)(x)

    Raises:
        SingularPoint: If |x| <= r_min
    """
    x_arr = _regular_point(x, r_min)
    gauge = connection_A(u, x_arr, r_min) * psi(x_arr)
    return derivative_along(psi, u, x_arr, fd_step) + gauge


def apply_J(value: Quaternion, x: Any, r_min: float = DEFAULT_R_MIN) -> Quaternion:
    """(J psi)(x) = j(x) psi(x), applied to a value psi(x)"""
    return jdir(x, r_min) * value


def apply_X(i: int, value: Quaternion, x: Any) -> Quaternion:
    """(X_i psi)(x) = x_i psi(x), applied to a value psi(x)"""
    _unit(i)
    return np.asarray(x, dtype=float)[..., i] * value


def apply_P(
    i: int,
    psi: QuaternionField,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    fd_step: float = DEFAULT_FD_STEP,
) -> Quaternion:
    """Momentum P_i = J nabla_i"""
    return apply_J(apply_nabla(_unit(i), psi, x, r_min, fd_step), x, r_min)


def apply_L(
    i: int, psi: QuaternionField, x: Any, fd_step: float = DEFAULT_FD_STEP
) -> Quaternion:
    """
    Rotation generator L_i = eps_ijk x_j d_k - (1/2) e_i.

    The spin part acts by left multiplication. Defined everywhere, including
    inside the exclusion ball.
    """
    x_arr = np.asarray(x, dtype=float)
    orbital = derivative_along(psi, np.cross(_unit(i), x_arr), x_arr, fd_step)
    return orbital + (-0.5 * Quaternion.basis(i + 1)) * psi(x_arr)


def nabla_field(
    u: Any,
    psi: QuaternionField,
    r_min: float = DEFAULT_R_MIN,
    fd_step: float = DEFAULT_FD_STEP,
) -> QuaternionField:
    """nabla_u psi as a field"""
    return lambda x: apply_nabla(u, psi, x, r_min, fd_step)


def j_field(psi: QuaternionField, r_min: float = DEFAULT_R_MIN) -> QuaternionField:
    """J psi as a field"""
    return lambda x: apply_J(psi(x), x, r_min)


def x_field(i: int, psi: QuaternionField) -> QuaternionField:
    """X_i psi as a field"""
    return lambda x: apply_X(i, psi(x), x)


def p_field(
    i: int,
    psi: QuaternionField,
    r_min: float = DEFAULT_R_MIN,
    fd_step: float = DEFAULT_FD_STEP,
) -> QuaternionField:
    """P_i psi as a field"""
    return lambda x: apply_P(i, psi, x, r_min, fd_step)


def l_field(
    i: int, psi: QuaternionField, fd_step: float = DEFAULT_FD_STEP
) -> QuaternionField:
    """L_i psi as a field"""
    return lambda x: apply_L(i, psi, x, fd_step)


if __name__ == "__main__":
    print("🧲 Testing monopole operators...")
    north = np.array([0.0, 0.0, 1.0])
    print(f"✅ A_e1(north) = {connection_A([1.0, 0.0, 0.0], north)}")
    print(f"✅ Omega_12(north) = {curvature(0, 1, north)}")
    print(f"✅ presymplectic(north) = {presymplectic_extract(0, 1, north)}")
