"""Coadjoint action of the (covering) Poincare group on the dual of its Lie algebra.

Coordinates are (h, p, j, k): energy, momentum, angular momentum and boost.
Group elements are products of the four factor kinds below, each acting by
the closed-form rows of the coadjoint action table.
"""

from enum import Enum
from typing import Any, Iterable, Tuple

import numpy as np

from monopole_quantization.errors import DegenerateQuaternion
from monopole_quantization.quaternions.pauli import rotate_vector
from monopole_quantization.quaternions.quaternion import qexp_pure

AXIS_TOLERANCE = 1e-12
ROTATION_PERIOD = 4.0 * np.pi


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("...k,...k->...", a, b)


class CoadjointPoint:
    """A point (h, p, j, k) of the 10-dimensional dual Poincare algebra"""

    def __init__(self, h: Any, p: Any, j: Any, k: Any):
        """
        Initialize a coadjoint point.

        Args:
            h: Energy coordinate, shape S
            p: Momentum, shape S + (3,)
            j: Angular momentum, shape S + (3,)
            k: Boost coordinate, shape S + (3,)

        Raises:
            ValueError: If a component is not finite
        """
        self.h = np.asarray(h, dtype=float)
        self.p = np.asarray(p, dtype=float)
        self.j = np.asarray(j, dtype=float)
        self.k = np.asarray(k, dtype=float)
        for vector in (self.p, self.j, self.k):
            if vector.ndim == 0 or vector.shape[-1] != 3:
                raise ValueError("Coadjoint vector coordinates must be 3-vectors")
        if not all(np.all(np.isfinite(c)) for c in (self.h, self.p, self.j, self.k)):
            raise ValueError("Coadjoint coordinates must be finite")

    @classmethod
    def from_array(cls, y: Any) -> "CoadjointPoint":
        """Build from an array ordered [h, p1..p3, j1..j3, k1..k3]"""
        arr = np.asarray(y, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != 10:
            raise ValueError("Coadjoint arrays must have a trailing axis of 10")
        return cls(arr[..., 0], arr[..., 1:4], arr[..., 4:7], arr[..., 7:10])

    def as_array(self) -> np.ndarray:
        """Coordinates ordered [h, p1..p3, j1..j3, k1..k3]"""
        h, p, j, k = np.broadcast_arrays(self.h[..., None], self.p, self.j, self.k)
        return np.concatenate([h[..., :1], p, j, k], axis=-1)

    def scale(self) -> np.ndarray:
        """Squared Euclidean norm of the coordinate vector"""
        y = self.as_array()
        return _dot(y, y)

    def __repr__(self) -> str:
        return (
            f"CoadjointPoint(h={self.h.tolist()}, p={self.p.tolist()}, "
            f"j={self.j.tolist()}, k={self.k.tolist()})"
        )


class FactorKind(Enum):
    """Kinds of one-parameter group factors"""

    TIME_TRANSLATION = "time-translation"
    SPACE_TRANSLATION = "space-translation"
    ROTATION = "rotation"
    BOOST = "boost"


def _unit_axis(axis: Any) -> np.ndarray:
    arr = np.asarray(axis, dtype=float)
    if arr.shape != (3,):
        raise ValueError("Group factor axes must be 3-vectors")
    length = np.linalg.norm(arr)
    if length < AXIS_TOLERANCE:
        raise DegenerateQuaternion("Group factor axis is too short to normalize")
    return arr / length


class GroupFactor:
    """One factor exp(X) with X = -a0 H, a.P, alpha m.J or zeta n.K"""

    def __init__(self, kind: FactorKind, parameter: Any, axis: Any = None):
        """
        Initialize a group factor. Prefer the named constructors.

        Args:
            kind: Factor kind
            parameter: a0, the vector a, the angle alpha in [0, 4 pi) or the
                rapidity zeta >= 0
            axis: Unit axis m or n for rotations and boosts

        Raises:
            ValueError: If the parameters violate the factor invariants
        """
        self.kind = kind
        if kind is FactorKind.SPACE_TRANSLATION:
            self.parameter = np.asarray(parameter, dtype=float)
            if self.parameter.shape != (3,):
                raise ValueError("Space translations need a 3-vector")
            self.axis = None
            return

        self.parameter = float(parameter)
        if kind is FactorKind.TIME_TRANSLATION:
            self.axis = None
            return

        self.axis = np.asarray(axis, dtype=float)
        if abs(np.linalg.norm(self.axis) - 1.0) > AXIS_TOLERANCE:
            raise ValueError("Group factor axis must be a unit vector")
        if kind is FactorKind.ROTATION and not 0.0 <= self.parameter < ROTATION_PERIOD:
            raise ValueError("Rotation angle must lie in [0, 4 pi)")
        if kind is FactorKind.BOOST and self.parameter < 0.0:
            raise ValueError("Boost rapidity must be non-negative")

    @classmethod
    def time_translation(cls, a0: float) -> "GroupFactor":
        """exp(-a0 H)"""
        return cls(FactorKind.TIME_TRANSLATION, a0)

    @classmethod
    def space_translation(cls, a: Any) -> "GroupFactor":
        """exp(a.P)"""
        return cls(FactorKind.SPACE_TRANSLATION, a)

    @classmethod
    def rotation(cls, alpha: float, m: Any) -> "GroupFactor":
        """exp(alpha m.J); negative angles flip the axis, angles are reduced mod 4 pi"""
        axis = _unit_axis(m)
        if alpha < 0.0:
            alpha, axis = -alpha, -axis
        return cls(FactorKind.ROTATION, float(np.fmod(alpha, ROTATION_PERIOD)), axis)

    @classmethod
    def boost(cls, zeta: float, n: Any) -> "GroupFactor":
        """exp(zeta n.K); negative rapidities flip the axis"""
        axis = _unit_axis(n)
        if zeta < 0.0:
            zeta, axis = -zeta, -axis
        return cls(FactorKind.BOOST, zeta, axis)

    def __repr__(self) -> str:
        if self.axis is None:
            parameter = np.asarray(self.parameter).tolist()
            return f"GroupFactor({self.kind.value}, {parameter})"
        axis = self.axis.tolist()
        return f"GroupFactor({self.kind.value}, {self.parameter}, axis={axis})"


def rotation_quaternion(g: GroupFactor) -> Any:
    """Half-angle unit quaternion exp(m alpha/2) realizing a rotation factor"""
    return qexp_pure(g.axis, 0.5 * g.parameter)


def coad_apply(g: GroupFactor, y: CoadjointPoint) -> CoadjointPoint:
    """
    Apply Coad(exp X) to a coadjoint point.

    Args:
        g: Group factor
        y: Coadjoint point (or batch)

    Returns:
        CoadjointPoint: The transformed point
    """
    if g.kind is FactorKind.TIME_TRANSLATION:
        return CoadjointPoint(y.h, y.p, y.j, y.k - g.parameter * y.p)

    if g.kind is FactorKind.SPACE_TRANSLATION:
        a = g.parameter
        return CoadjointPoint(
            y.h, y.p, y.j + np.cross(a, y.p), y.k + y.h[..., None] * a
        )

    if g.kind is FactorKind.ROTATION:
        s = rotation_quaternion(g)
        return CoadjointPoint(
            y.h, rotate_vector(s, y.p), rotate_vector(s, y.j), rotate_vector(s, y.k)
        )

    n = g.axis
    ch, sh = np.cosh(g.parameter), np.sinh(g.parameter)
    n_p = _dot(y.p, n)[..., None]
    n_j = _dot(y.j, n)[..., None]
    n_k = _dot(y.k, n)[..., None]
    return CoadjointPoint(
        ch * y.h - sh * n_p[..., 0],
        y.p - sh * y.h[..., None] * n + (ch - 1.0) * n_p * n,
        ch * y.j + sh * np.cross(n, y.k) - (ch - 1.0) * n_j * n,
        ch * y.k - sh * np.cross(n, y.j) - (ch - 1.0) * n_k * n,
    )


def coad_word(gs: Iterable[GroupFactor], y: CoadjointPoint) -> CoadjointPoint:
    """Apply a word of factors left to right; the empty word is the identity"""
    for g in gs:
        y = coad_apply(g, y)
    return y


def pauli_lubanski(y: CoadjointPoint) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pauli-Lubanski vector of a coadjoint point.

    Returns:
        tuple: (w0, w) with w0 = j.p and w = p x k + h j
    """
    w0 = _dot(y.j, y.p)
    w = np.cross(y.p, y.k) + y.h[..., None] * y.j
    return w0, w


def casimirs(y: CoadjointPoint) -> Tuple[np.ndarray, np.ndarray]:
    """
    The two Casimir functions in signature (-, +, +, +).

    Returns:
        tuple: (C1, C2) with C1 = -h^2 + p.p and C2 = -(j.p)^2 + |p x k + h j|^2
    """
    c1 = -y.h * y.h + _dot(y.p, y.p)
    w0, w = pauli_lubanski(y)
    c2 = -w0 * w0 + _dot(w, w)
    return c1, c2


def random_factor(rng: np.random.Generator, max_rapidity: float = 1.0) -> GroupFactor:
    """A random factor of a random kind"""
    kind = list(FactorKind)[int(rng.integers(4))]
    if kind is FactorKind.TIME_TRANSLATION:
        return GroupFactor.time_translation(rng.uniform(-2.0, 2.0))
    if kind is FactorKind.SPACE_TRANSLATION:
        return GroupFactor.space_translation(rng.uniform(-2.0, 2.0, 3))
    axis = rng.standard_normal(3)
    if kind is FactorKind.ROTATION:
        return GroupFactor.rotation(rng.uniform(0.0, ROTATION_PERIOD), axis)
    return GroupFactor.boost(rng.uniform(0.0, max_rapidity), axis)


def random_point(rng: np.random.Generator, count: int) -> CoadjointPoint:
    """Coadjoint points with standard normal coordinates"""
    return CoadjointPoint.from_array(rng.standard_normal((count, 10)))


if __name__ == "__main__":
    print("🚀 Testing the coadjoint action...")
    rest = CoadjointPoint(1.0, np.zeros(3), np.zeros(3), np.zeros(3))
    boosted = coad_apply(GroupFactor.boost(0.5, [0.0, 0.0, 1.0]), rest)
    print(f"✅ boosted rest point: {boosted}")
    spinning = CoadjointPoint(1.0, np.zeros(3), [0.0, 0.0, 3.0], np.zeros(3))
    print(f"✅ casimirs: {casimirs(spinning)}")
