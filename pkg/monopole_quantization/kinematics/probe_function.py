"""Quaternion-valued probe wavefunctions with closed-form derivatives.

A probe is a Gaussian envelope times an affine quaternion polynomial,

    psi(x) = exp(-|x - c|^2 / s^2) (q0 + sum_i (x_i - c_i) q_i),

smooth and decaying, so every finite-difference oracle is well conditioned.
"""

from typing import Any, Callable, Tuple

import numpy as np

from monopole_quantization.quaternions.quaternion import Quaternion

# any field x -> psi(x) on batches of points
QuaternionField = Callable[[np.ndarray], Quaternion]

DEFAULT_WIDTH_RANGE = (2.5, 3.5)


class QuaternionFieldValue:
    """A pointwise operator output: the value of a field at a point"""

    def __init__(self, at: Any, value: Quaternion):
        """
        Initialize a field value.

        Args:
            at: Evaluation point(s), shape (..., 3)
            value: Quaternion value(s) at those points

        Raises:
            ValueError: If the point or the value has non-finite components
        """
        self.at = np.asarray(at, dtype=float)
        if not np.all(np.isfinite(self.at)):
            raise ValueError("Field value location must be finite")
        if not np.all(np.isfinite(value.components())):
            raise ValueError("Field value must be finite")
        self.value = value


class ProbeFunction:
    """Gaussian-times-affine quaternion wavefunction"""

    def __init__(
        self,
        center: Any,
        width: float,
        amplitude: Quaternion,
        linear: Quaternion,
    ):
        """
        Initialize a probe function.

        Args:
            center: Center c of the envelope, a real 3-vector
            width: Envelope width s > 0; ``inf`` disables the envelope
            amplitude: Constant coefficient q0
            linear: Linear coefficients q1, q2, q3 as a quaternion batch of shape (3,)

        Raises:
            ValueError: If the width is not positive or the shapes are wrong
        """
        self.center = np.asarray(center, dtype=float)
        if self.center.shape != (3,):
            raise ValueError("Probe center must be a 3-vector")
        if not width > 0.0:
            raise ValueError("Probe width must be positive")
        if amplitude.shape != ():
            raise ValueError("Probe amplitude must be a single quaternion")
        if linear.shape != (3,):
            raise ValueError("Probe must have exactly three linear coefficients")

        self.width = float(width)
        self.amplitude = amplitude
        self.linear = linear
        self._inv_s2 = 1.0 / (self.width * self.width)

    @classmethod
    def constant(cls, value: Quaternion) -> "ProbeFunction":
        """The constant function psi(x) = value (no envelope, no linear terms)"""
        linear = Quaternion(np.zeros(3), np.zeros((3, 3)))
        return cls(np.zeros(3), np.inf, value, linear)

    def _offsets(self, x: Any) -> Tuple[np.ndarray, np.ndarray, Quaternion]:
        d = np.asarray(x, dtype=float) - self.center
        envelope = np.exp(-np.einsum("...k,...k->...", d, d) * self._inv_s2)
        affine = Quaternion(
            self.amplitude.w + d @ self.linear.w,
            self.amplitude.v + d @ self.linear.v,
        )
        return d, envelope, affine

    def __call__(self, x: Any) -> Quaternion:
        """Evaluate psi on a batch of points of shape (..., 3)"""
        _, envelope, affine = self._offsets(x)
        return envelope * affine

    def gradient(self, x: Any) -> Quaternion:
        """
        Analytic partial derivatives d_i psi.

        Args:
            x: Points of shape S + (3,)

        Returns:
            Quaternion: Batch of shape S + (3,), index i last
        """
        d, envelope, affine = self._offsets(x)
        radial = -2.0 * self._inv_s2 * d
        w = envelope[..., None] * (radial * affine.w[..., None] + self.linear.w)
        v = envelope[..., None, None] * (
            radial[..., None] * affine.v[..., None, :] + self.linear.v
        )
        return Quaternion(w, v)

    def directional_derivative(self, u: Any, x: Any) -> Quaternion:
        """(u . d) psi at x, for directions u broadcast against x"""
        grad = self.gradient(x)
        u_arr = np.asarray(u, dtype=float)
        return Quaternion(
            np.einsum("...i,...i->...", u_arr, grad.w),
            np.einsum("...i,...ik->...k", u_arr, grad.v),
        )


def generate_probe_function(
    rng: np.random.Generator,
    width_range: Tuple[float, float] = DEFAULT_WIDTH_RANGE,
    center_scale: float = 1.0,
) -> ProbeFunction:
    """
    Generate a random probe function.

    Args:
        rng: Random generator to draw from
        width_range: Range of the envelope width
        center_scale: Half-width of the box the center is drawn from

    Returns:
        ProbeFunction: A probe with standard normal quaternion coefficients
    """
    center = rng.uniform(-center_scale, center_scale, 3)
    width = rng.uniform(*width_range)
    amplitude = Quaternion.from_components(rng.standard_normal(4))
    linear = Quaternion.from_components(rng.standard_normal((3, 4)))
    return ProbeFunction(center, width, amplitude, linear)


if __name__ == "__main__":
    print("🌊 Testing probe functions...")
    probe = generate_probe_function(np.random.default_rng(7))
    points = np.array([[0.5, -0.2, 1.0], [1.5, 1.0, -0.3]])
    print(f"✅ psi(x) = {probe(points).components()}")
    print(f"✅ grad psi shape = {probe.gradient(points).shape}")
