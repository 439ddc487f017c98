"""Chart (q, p, helicity) on the massless coadjoint orbits.

On an orbit with C1 = 0 and w parallel to p the point is determined by
q = k/h, the momentum and the helicity:

    h = |p|,  j = lambda p/|p| + q x p,  k = |p| q.
"""

from typing import Any

import numpy as np

from monopole_quantization.errors import MomentumTooSmall, OffOrbit
from monopole_quantization.poincare.coadjoint import (
    CoadjointPoint,
    FactorKind,
    GroupFactor,
    coad_apply,
    pauli_lubanski,
    rotation_quaternion,
)
from monopole_quantization.quaternions.pauli import rotate_vector

P_MIN = 1e-6
ORBIT_TOLERANCE = 1e-9


def _norm(v: np.ndarray) -> np.ndarray:
    return np.asarray(np.linalg.norm(v, axis=-1))


class OrbitChartPoint:
    """Chart coordinates of a point on a massless orbit"""

    def __init__(self, q: Any, p: Any, helicity: Any, p_min: float = P_MIN):
        """
        Initialize a chart point.

        Args:
            q: Position-like coordinate k/h, shape (..., 3)
            p: Momentum, shape (..., 3)
            helicity: Helicity lambda = j.p/|p|
            p_min: Smallest admissible momentum norm

        Raises:
            MomentumTooSmall: If |p| <= p_min
        """
        self.q = np.asarray(q, dtype=float)
        self.p = np.asarray(p, dtype=float)
        self.helicity = np.asarray(helicity, dtype=float)
        if np.any(_norm(self.p) <= p_min):
            raise MomentumTooSmall(f"Momentum norm must exceed {p_min}")

    def __repr__(self) -> str:
        return (
            f"OrbitChartPoint(q={self.q.tolist()}, p={self.p.tolist()}, "
            f"helicity={self.helicity.tolist()})"
        )


def chart_to_point(c: OrbitChartPoint) -> CoadjointPoint:
    """
    Embed a chart point into the dual Lie algebra.

    Args:
        c: Chart point

    Returns:
        CoadjointPoint: (h, p, j, k) on the massless orbit of helicity lambda
    """
    p_norm = _norm(c.p)
    j = c.helicity[..., None] * c.p / p_norm[..., None] + np.cross(c.q, c.p)
    return CoadjointPoint(p_norm, c.p, j, p_norm[..., None] * c.q)


def orbit_residuals(y: CoadjointPoint) -> np.ndarray:
    """
    Scale-relative massless-orbit residual of each point.

    Combines |C1| / (h^2 + |p|^2) with the misalignment of (w0, w) from
    lambda (h, p) relative to the squared coordinate norm.
    """
    p_norm = np.maximum(_norm(y.p), np.finfo(float).tiny)
    c1 = -y.h * y.h + np.einsum("...k,...k->...", y.p, y.p)
    c1_scale = np.maximum(y.h * y.h + p_norm * p_norm, np.finfo(float).tiny)
    helicity = np.einsum("...k,...k->...", y.j, y.p) / p_norm
    w0, w = pauli_lubanski(y)
    misalignment = np.maximum(
        np.abs(w0 - helicity * y.h),
        _norm(w - helicity[..., None] * y.p),
    )
    return np.maximum(
        np.abs(c1) / c1_scale,
        misalignment / np.maximum(y.scale(), np.finfo(float).tiny),
    )


def point_to_chart(
    y: CoadjointPoint, p_min: float = P_MIN, tolerance: float = ORBIT_TOLERANCE
) -> OrbitChartPoint:
    """
    Recover chart coordinates from a point on a massless orbit.

    Args:
        y: Coadjoint point
        p_min: Smallest admissible energy
        tolerance: Scale-relative tolerance on the orbit constraints

    Returns:
        OrbitChartPoint: q = k/h and lambda = j.p/|p|

    Raises:
        OffOrbit: If h <= p_min or the constraints are violated
    """
    if np.any(y.h <= p_min):
        raise OffOrbit(f"Energy must exceed {p_min} on the massless chart")
    if np.any(orbit_residuals(y) > tolerance):
        raise OffOrbit("Point is not on a massless orbit with w parallel to p")
    helicity = np.einsum("...k,...k->...", y.j, y.p) / _norm(y.p)
    return OrbitChartPoint(y.k / y.h[..., None], y.p, helicity, p_min)


def expected_q_action(g: GroupFactor, c: OrbitChartPoint) -> np.ndarray:
    """
    Closed-form action on q for translations and rotations.

    Raises:
        ValueError: For boosts, which have no closed form on q
    """
    if g.kind is FactorKind.TIME_TRANSLATION:
        return c.q - g.parameter * c.p / _norm(c.p)[..., None]
    if g.kind is FactorKind.SPACE_TRANSLATION:
        return c.q + g.parameter
    if g.kind is FactorKind.ROTATION:
        return rotate_vector(rotation_quaternion(g), c.q)
    raise ValueError("Boosts have no closed-form action on q")


def coad_q_action_check(g: GroupFactor, c: OrbitChartPoint) -> float:
    """
    Compare the transported chart coordinates with their closed forms.

    Translations and rotations are compared on q; boosts, which mix q with
    p, are checked to keep the point on the orbit with unchanged helicity.

    Args:
        g: Group factor
        c: Chart point

    Returns:
        float: Max deviation

    Raises:
        OffOrbit: If the transformed point leaves the chart
    """
    moved = point_to_chart(coad_apply(g, chart_to_point(c)))
    if g.kind is FactorKind.BOOST:
        deviation = np.abs(moved.helicity - c.helicity)
    else:
        deviation = np.abs(moved.q - expected_q_action(g, c))
    return float(np.max(deviation, initial=0.0))


def random_chart_point(
    rng: np.random.Generator,
    count: int,
    helicity: Any = None,
    q_scale: float = 2.0,
) -> OrbitChartPoint:
    """
    Random chart points with |p| bounded away from zero.

    Args:
        rng: Random generator
        count: Number of points
        helicity: Fixed helicity, or None for helicities uniform in [-2, 2]
        q_scale: Half-width of the q box
    """
    q = rng.uniform(-q_scale, q_scale, (count, 3))
    direction = rng.standard_normal((count, 3))
    direction /= np.linalg.norm(direction, axis=-1)[..., None]
    p = direction * rng.uniform(0.5, 2.0, count)[..., None]
    if helicity is None:
        lam = rng.uniform(-2.0, 2.0, count)
    else:
        lam = np.full(count, helicity)
    return OrbitChartPoint(q, p, lam)


if __name__ == "__main__":
    print("💡 Testing the massless orbit chart...")
    chart = OrbitChartPoint(np.zeros(3), [0.0, 0.0, 1.0], 2.0)
    y = chart_to_point(chart)
    print(f"✅ chart_to_point: {y}")
    print(f"✅ round trip: {point_to_chart(y)}")
