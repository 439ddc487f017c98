"""Batched double-precision quaternion algebra.

A ``Quaternion`` stores a scalar part ``w`` of shape ``S`` and a vector part
``v`` of shape ``S + (3,)``, so a single object can hold one quaternion or a
whole batch of them. Units are e0 = 1 and e1, e2, e3 with
e_i e_j = -delta_ij + eps_ijk e_k.
"""

from typing import Any, Tuple, Union

import numpy as np

from monopole_quantization.errors import DegenerateQuaternion, SingularPoint

DEFAULT_R_MIN = 0.1
UNIT_NORM_THRESHOLD = 1e-8

LEVI_CIVITA = np.zeros((3, 3, 3))
LEVI_CIVITA[0, 1, 2] = LEVI_CIVITA[1, 2, 0] = LEVI_CIVITA[2, 0, 1] = 1.0
LEVI_CIVITA[0, 2, 1] = LEVI_CIVITA[2, 1, 0] = LEVI_CIVITA[1, 0, 2] = -1.0

Scalar = Union[float, int, np.ndarray]


class Quaternion:
    """A quaternion (or a batch of quaternions) split into scalar and vector parts"""

    # numpy defers mixed array-quaternion arithmetic to the reflected operators
    __array_ufunc__ = None

    def __init__(self, w: Any, v: Any):
        """
        Initialize a quaternion.

        Args:
            w: Scalar part, shape S
            v: Vector part (coefficients of e1, e2, e3), shape S + (3,)

        Raises:
            ValueError: If the vector part does not end in a length-3 axis
        """
        w_arr = np.asarray(w, dtype=float)
        v_arr = np.asarray(v, dtype=float)
        if v_arr.ndim == 0 or v_arr.shape[-1] != 3:
            raise ValueError("Quaternion vector part must have a trailing axis of 3")

        shape = np.broadcast_shapes(w_arr.shape, v_arr.shape[:-1])
        self._w = np.broadcast_to(w_arr, shape).copy()
        self._v = np.broadcast_to(v_arr, shape + (3,)).copy()

    @classmethod
    def from_components(cls, components: Any) -> "Quaternion":
        """Build from an array of shape (..., 4) ordered (w, x, y, z)"""
        arr = np.asarray(components, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != 4:
            raise ValueError("Quaternion components must have a trailing axis of 4")
        return cls(arr[..., 0], arr[..., 1:])

    @classmethod
    def pure(cls, vector: Any) -> "Quaternion":
        """The pure quaternion v.e for a 3-vector (or batch of them)"""
        v = np.asarray(vector, dtype=float)
        return cls(np.zeros(v.shape[:-1]), v)

    @classmethod
    def one(cls, shape: Tuple[int, ...] = ()) -> "Quaternion":
        """The multiplicative identity e0"""
        return cls(np.ones(shape), np.zeros(shape + (3,)))

    @classmethod
    def basis(cls, index: int) -> "Quaternion":
        """The unit e_index for index 0..3"""
        if index not in (0, 1, 2, 3):
            raise ValueError(f"Quaternion basis index must be 0..3, got {index}")
        return cls.from_components(np.eye(4)[index])

    @property
    def w(self) -> np.ndarray:
        """Scalar part"""
        return self._w

    @property
    def v(self) -> np.ndarray:
        """Vector part"""
        return self._v

    @property
    def shape(self) -> Tuple[int, ...]:
        """Batch shape"""
        return tuple(self._w.shape)

    def components(self) -> np.ndarray:
        """Components as an array of shape (..., 4) ordered (w, x, y, z)"""
        return np.concatenate([self._w[..., None], self._v], axis=-1)

    def conj(self) -> "Quaternion":
        """Quaternion conjugate (vector part negated)"""
        return Quaternion(self._w, -self._v)

    def norm_squared(self) -> np.ndarray:
        return self._w * self._w + np.einsum("...k,...k->...", self._v, self._v)

    def norm(self) -> np.ndarray:
        """Euclidean quaternion norm"""
        return np.sqrt(self.norm_squared())

    def inverse(self) -> "Quaternion":
        """
        Multiplicative inverse q* / |q|^2.

        Raises:
            DegenerateQuaternion: If any element has zero norm
        """
        n2 = self.norm_squared()
        if np.any(n2 == 0.0):
            raise DegenerateQuaternion("Cannot invert a zero quaternion")
        return Quaternion(self._w / n2, -self._v / n2[..., None])

    def __mul__(self, other: Any) -> "Quaternion":
        if isinstance(other, Quaternion):
            return qmul(self, other)
        factor = np.asarray(other, dtype=float)
        return Quaternion(self._w * factor, self._v * factor[..., None])

    def __rmul__(self, other: Any) -> "Quaternion":
        factor = np.asarray(other, dtype=float)
        return Quaternion(factor * self._w, factor[..., None] * self._v)

    def __truediv__(self, other: Any) -> "Quaternion":
        factor = np.asarray(other, dtype=float)
        return Quaternion(self._w / factor, self._v / factor[..., None])

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self._w + other.w, self._v + other.v)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self._w - other.w, self._v - other.v)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self._w, -self._v)

    def __getitem__(self, index: Any) -> "Quaternion":
        return Quaternion(self._w[index], self._v[index])

    def __repr__(self) -> str:
        if self.shape == ():
            x, y, z = self._v
            w = float(self._w)
            return f"Quaternion({w:.6g} + {x:.6g}e1 + {y:.6g}e2 + {z:.6g}e3)"
        return f"Quaternion(shape={self.shape})"


class UnitQuaternion(Quaternion):
    """A quaternion renormalized to unit norm on construction"""

    def __init__(self, w: Any, v: Any):
        """
        Initialize a unit quaternion.

        Args:
            w: Scalar part
            v: Vector part

        Raises:
            DegenerateQuaternion: If the raw norm of any element is below 1e-8
        """
        super().__init__(w, v)
        raw_norm = self.norm()
        if np.any(raw_norm < UNIT_NORM_THRESHOLD):
            raise DegenerateQuaternion(
                "Cannot normalize a quaternion with norm below "
                f"{UNIT_NORM_THRESHOLD}"
            )
        self._w = self._w / raw_norm
        self._v = self._v / raw_norm[..., None]

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "UnitQuaternion":
        return cls(q.w, q.v)


class ImaginaryUnit(UnitQuaternion):
    """A pure unit quaternion n.e; squares to -1"""

    def __init__(self, axis: Any):
        """
        Initialize an imaginary unit from a direction.

        Args:
            axis: Real 3-vector (or batch); normalized on construction

        Raises:
            DegenerateQuaternion: If the axis is too short to normalize
        """
        axis_arr = np.asarray(axis, dtype=float)
        super().__init__(np.zeros(axis_arr.shape[:-1]), axis_arr)

    @property
    def axis(self) -> np.ndarray:
        """Unit rotation axis"""
        return self.v


def qmul(q1: Quaternion, q2: Quaternion) -> Quaternion:
    """
    Hamilton product q1 q2 (broadcast over batch shapes).

    Args:
        q1: Left factor
        q2: Right factor

    Returns:
        Quaternion: The product
    """
    w = q1.w * q2.w - np.einsum("...k,...k->...", q1.v, q2.v)
    v = (
        q1.w[..., None] * q2.v
        + q2.w[..., None] * q1.v
        + np.cross(q1.v, q2.v)
    )
    return Quaternion(w, v)


def qconj(q: Quaternion) -> Quaternion:
    """Quaternion conjugate; reverses the order of products"""
    return q.conj()


def qexp_pure(n: Any, theta: Scalar) -> UnitQuaternion:
    """
    Exponential of a pure quaternion, cos(theta) + n sin(theta).

    Args:
        n: ImaginaryUnit or a real 3-vector direction (normalized here)
        theta: Angle in radians, broadcast against the batch shape of n

    Returns:
        UnitQuaternion: exp(n theta)
    """
    axis = n.axis if isinstance(n, ImaginaryUnit) else ImaginaryUnit(n).axis
    theta_arr = np.asarray(theta, dtype=float)
    return UnitQuaternion(np.cos(theta_arr), axis * np.sin(theta_arr)[..., None])


def jdir(x: Any, r_min: float = DEFAULT_R_MIN) -> ImaginaryUnit:
    """
    The radial imaginary unit j(x) = e.x/|x|.

    Args:
        x: Point(s) in R^3, shape (..., 3)
        r_min: Exclusion radius around the origin

    Returns:
        ImaginaryUnit: j(x)

    Raises:
        SingularPoint: If any |x| <= r_min
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.linalg.norm(x_arr, axis=-1) <= r_min):
        raise SingularPoint(f"Point inside the exclusion radius {r_min}")
    return ImaginaryUnit(x_arr)


def max_deviation(q1: Quaternion, q2: Quaternion) -> float:
    """Largest absolute component difference between two quaternion batches"""
    diff = q1.components() - q2.components()
    if diff.size == 0:
        return 0.0
    return float(np.max(np.abs(diff)))


def random_quaternions(rng: np.random.Generator, size: int) -> Quaternion:
    """Quaternions with components drawn uniformly from [-1, 1]"""
    return Quaternion.from_components(rng.uniform(-1.0, 1.0, (size, 4)))


def random_unit_quaternions(rng: np.random.Generator, size: int) -> UnitQuaternion:
    """Unit quaternions uniformly distributed on S^3"""
    return UnitQuaternion.from_quaternion(
        Quaternion.from_components(rng.standard_normal((size, 4)))
    )


if __name__ == "__main__":
    print("🔢 Testing quaternion algebra...")

    e1, e2, e3 = (Quaternion.basis(k) for k in (1, 2, 3))
    assert max_deviation(e1 * e2, e3) == 0.0, "e1 e2 should be e3"
    assert max_deviation(e1 * e1, -Quaternion.one()) == 0.0, "e1^2 should be -1"
    print("✅ Defining relations hold")

    q = Quaternion(3.0, [4.0, 0.0, 0.0])
    print(f"   conj(q) q = {q.conj() * q}")

    j = jdir([3.0, 4.0, 0.0])
    print(f"✅ j(3,4,0) = {j}")
