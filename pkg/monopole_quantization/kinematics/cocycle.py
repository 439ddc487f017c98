"""Cocycle translations, the multiplier and the geometric-phase oracle.

The cocycle w(a; x) is the half-angle rotation carrying the direction of x to
that of x + a. Phases act on wavefunction values by left multiplication.
"""

from typing import Any

import numpy as np

from monopole_quantization.errors import (
    AntipodalTranslation,
    DegenerateTriangle,
    IllConditioned,
    SingularPoint,
)
from monopole_quantization.kinematics.probe_function import QuaternionField
from monopole_quantization.kinematics.sample_domain import (
    DEFAULT_CONE_TOLERANCE,
    is_antipodal,
)
from monopole_quantization.quaternions.quaternion import (
    DEFAULT_R_MIN,
    Quaternion,
    UnitQuaternion,
    jdir,
)

SOLID_ANGLE_FLOOR = 1e-6
SOLID_ANGLE_CEILING_MARGIN = 1e-3


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("...k,...k->...", a, b)


def cocycle_w(
    a: Any,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> UnitQuaternion:
    """
    The cocycle w(a; x) = cos(alpha/2) + j(x cross a) sin(alpha/2).

    alpha is the angle between x and x + a, taken from a two-argument
    arctangent. The result is exactly 1 when x cross a = 0 and x.(x+a) > 0.

    Args:
        a: Translation vector(s), shape (..., 3)
        x: Point(s), shape (..., 3)
        r_min: Exclusion radius
        cone_tolerance: Antipodal margin

    Returns:
        UnitQuaternion: w(a; x)

    Raises:
        SingularPoint: If |x| or |x + a| is within r_min
        AntipodalTranslation: If x and x + a are anti-parallel within the margin
    """
    a_arr = np.asarray(a, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    shifted = x_arr + a_arr
    if np.any(np.linalg.norm(x_arr, axis=-1) <= r_min) or np.any(
        np.linalg.norm(shifted, axis=-1) <= r_min
    ):
        raise SingularPoint(f"Cocycle endpoint inside the exclusion radius {r_min}")
    if np.any(is_antipodal(x_arr, shifted, cone_tolerance)):
        raise AntipodalTranslation(
            "x and x+a are anti-parallel; rotation axis undefined"
        )

    cross = np.cross(x_arr, a_arr)
    sine = np.linalg.norm(cross, axis=-1)
    alpha = np.arctan2(sine, _dot(x_arr, shifted))
    safe = np.where(sine > 0.0, sine, 1.0)
    axis = np.where((sine > 0.0)[..., None], cross / safe[..., None], 0.0)
    return UnitQuaternion(np.cos(alpha / 2.0), axis * np.sin(alpha / 2.0)[..., None])


def apply_U(
    a: Any,
    psi: QuaternionField,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> Quaternion:
    """
    Cocycle translation [U(a) psi](x) = w(a; x - a) psi(x - a).

    Args:
        a: Translation vector(s)
        psi: Wavefunction
        x: Evaluation point(s)
        r_min: Exclusion radius
        cone_tolerance: Antipodal margin

    Returns:
        Quaternion: The translated value at x
    """
    a_arr = np.asarray(a, dtype=float)
    origin = np.asarray(x, dtype=float) - a_arr
    return cocycle_w(a_arr, origin, r_min, cone_tolerance) * psi(origin)


def translated_field(
    a: Any,
    psi: QuaternionField,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> QuaternionField:
    """U(a) psi as a field, for composing translations"""
    return lambda x: apply_U(a, psi, x, r_min, cone_tolerance)


def multiplier_m(
    a: Any,
    b: Any,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> UnitQuaternion:
    """
    The multiplier m(a, b; x) = w*(a+b; x) w(a; x+b) w(b; x).

    It satisfies U(a) U(b) = U(a+b) M(a, b), with M(a, b) multiplying by
    m(a, b; x) at the point where the translated wavefunction is evaluated.

    Args:
        a: First translation
        b: Second translation
        x: Point(s)
        r_min: Exclusion radius
        cone_tolerance: Antipodal margin

    Returns:
        UnitQuaternion: m(a, b; x)
    """
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    product = (
        cocycle_w(a_arr + b_arr, x_arr, r_min, cone_tolerance).conj()
        * cocycle_w(a_arr, x_arr + b_arr, r_min, cone_tolerance)
        * cocycle_w(b_arr, x_arr, r_min, cone_tolerance)
    )
    return UnitQuaternion.from_quaternion(product)


def apply_M(
    a: Any,
    b: Any,
    psi: QuaternionField,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> Quaternion:
    """[M(a, b) psi](x) = m(a, b; x) psi(x)"""
    return multiplier_m(a, b, x, r_min, cone_tolerance) * psi(x)


def _van_oosterom_strackee(
    n1: np.ndarray, n2: np.ndarray, n3: np.ndarray
) -> np.ndarray:
    numerator = _dot(n1, np.cross(n2, n3))
    denominator = 1.0 + _dot(n1, n2) + _dot(n2, n3) + _dot(n3, n1)
    return np.asarray(2.0 * np.arctan2(numerator, denominator))


def solid_angle(
    v1: Any, v2: Any, v3: Any, cone_tolerance: float = DEFAULT_CONE_TOLERANCE
) -> np.ndarray:
    """
    Oriented solid angle of the geodesic triangle with vertices v1, v2, v3.

    Uses the Van Oosterom-Strackee arctangent on the normalized vertices.
    Triangles with two identical vertices have zero solid angle.

    Args:
        v1: First vertex direction(s)
        v2: Second vertex direction(s)
        v3: Third vertex direction(s)
        cone_tolerance: Angular margin below which two distinct vertices count
            as parallel

    Returns:
        np.ndarray: Signed solid angle in steradians

    Raises:
        DegenerateTriangle: If two distinct vertices are parallel within the margin
    """
    units = []
    for vertex in (v1, v2, v3):
        arr = np.asarray(vertex, dtype=float)
        length = np.linalg.norm(arr, axis=-1)
        if np.any(length == 0.0):
            raise DegenerateTriangle("Solid angle vertices must be nonzero")
        units.append(arr / length[..., None])
    n1, n2, n3 = np.broadcast_arrays(*units)

    identical = np.zeros(n1.shape[:-1], dtype=bool)
    for p, q in ((n1, n2), (n2, n3), (n3, n1)):
        same = np.all(p == q, axis=-1)
        angle = np.arctan2(np.linalg.norm(np.cross(p, q), axis=-1), _dot(p, q))
        parallel = (angle <= cone_tolerance) | (np.pi - angle <= cone_tolerance)
        if np.any(~same & parallel):
            raise DegenerateTriangle("Two triangle vertices are parallel")
        identical |= same

    return np.where(identical, 0.0, _van_oosterom_strackee(n1, n2, n3))


def phase_angle(m: Quaternion, axis: Any) -> np.ndarray:
    """
    Signed rotation angle of a unit quaternion about a given imaginary axis.

    This is the projection of log(m) onto the axis, atan2(m.v . n, m.w).
    """
    n = np.asarray(axis, dtype=float)
    return np.arctan2(_dot(m.v, n), m.w)


def geometric_phase_ratio(
    a: Any,
    b: Any,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> np.ndarray:
    """
    Ratio of the multiplier phase to the solid angle it encloses.

    The multiplier transports the direction of x around the triangle
    x -> x + b -> x + a + b, so the denominator is the solid angle of that
    triangle as seen from the origin.

    Args:
        a: First translation
        b: Second translation
        x: Base point(s)
        r_min: Exclusion radius
        cone_tolerance: Antipodal and parallel margin

    Returns:
        np.ndarray: phase_angle(m(a, b; x), j(x)) / solid_angle

    Raises:
        IllConditioned: If the solid angle is within 1e-6 of 0 or 1e-3 of 2 pi
    """
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    omega = solid_angle(x_arr, x_arr + b_arr, x_arr + a_arr + b_arr, cone_tolerance)
    magnitude = np.abs(omega)
    if np.any(magnitude <= SOLID_ANGLE_FLOOR) or np.any(
        2.0 * np.pi - magnitude <= SOLID_ANGLE_CEILING_MARGIN
    ):
        raise IllConditioned("Solid angle too close to 0 or 2 pi for a stable ratio")
    m = multiplier_m(a_arr, b_arr, x_arr, r_min, cone_tolerance)
    return phase_angle(m, jdir(x_arr, r_min).axis) / omega


def geometric_phase_admissible(
    a: Any,
    b: Any,
    x: Any,
    r_min: float = DEFAULT_R_MIN,
    cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
) -> np.ndarray:
    """True where geometric_phase_ratio is defined and well conditioned"""
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    corners = (x_arr, x_arr + b_arr, x_arr + a_arr + b_arr)
    ok = np.ones(x_arr.shape[:-1], dtype=bool)
    for corner in corners:
        ok &= np.linalg.norm(corner, axis=-1) > r_min
    first, second, third = corners
    for p, q in ((first, second), (second, third), (third, first)):
        angle = np.arctan2(np.linalg.norm(np.cross(p, q), axis=-1), _dot(p, q))
        ok &= (angle > cone_tolerance) & (np.pi - angle > cone_tolerance)
    ok &= ~is_antipodal(x_arr, x_arr + a_arr + b_arr, cone_tolerance)
    ok &= ~is_antipodal(x_arr + b_arr, x_arr + a_arr + b_arr, cone_tolerance)
    ok &= ~is_antipodal(x_arr, x_arr + b_arr, cone_tolerance)
    with np.errstate(invalid="ignore", divide="ignore"):
        units = [c / np.linalg.norm(c, axis=-1)[..., None] for c in corners]
        omega = _van_oosterom_strackee(*units)
    magnitude = np.abs(omega)
    ok &= (magnitude > SOLID_ANGLE_FLOOR) & (
        2.0 * np.pi - magnitude > SOLID_ANGLE_CEILING_MARGIN
    )
    return ok


if __name__ == "__main__":
    print("🔄 Testing cocycle translations...")
    w = cocycle_w([0.0, 1.0, 0.0], [1.0, 0.0, 0.0])
    print(f"✅ w((0,1,0); (1,0,0)) = {w}")
    octant = solid_angle([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0])
    print(f"✅ octant solid angle = {float(octant):.12f} (pi/2 = {np.pi / 2:.12f})")
    ratio = geometric_phase_ratio([0.3, 0.1, 0.0], [0.0, 0.4, 0.2], [1.0, 0.2, 0.5])
    print(f"✅ geometric phase ratio = {float(ratio):.9f}")
