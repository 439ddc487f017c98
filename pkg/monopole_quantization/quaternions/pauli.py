"""Pauli-matrix dictionary, Hopf projection and rotations by unit quaternions.

The dictionary is e0 = sigma0 and e_k = -i sigma_k. It is used only here; the
rest of the package works in quaternion arithmetic.
"""

from typing import Any

import numpy as np

from monopole_quantization.quaternions.quaternion import Quaternion

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)


def quaternion_to_matrix(q: Quaternion) -> np.ndarray:
    """
    Map a quaternion to its 2x2 complex matrix w sigma0 - i (v.sigma).

    Args:
        q: Quaternion batch of shape S

    Returns:
        np.ndarray: Complex array of shape S + (2, 2)
    """
    return q.w[..., None, None] * SIGMA_0 - 1.0j * np.einsum(
        "...k,kab->...ab", q.v, SIGMA
    )


def pauli_check(q1: Quaternion, q2: Quaternion) -> float:
    """
    Check the matrix dictionary is multiplicative on a pair of quaternions.

    Args:
        q1: Left factor
        q2: Right factor

    Returns:
        float: Largest entry of |matrix(q1 q2) - matrix(q1) matrix(q2)|
    """
    lhs = quaternion_to_matrix(q1 * q2)
    rhs = np.matmul(quaternion_to_matrix(q1), quaternion_to_matrix(q2))
    if lhs.size == 0:
        return 0.0
    return float(np.max(np.abs(lhs - rhs)))


def hopf_project(s: Quaternion) -> np.ndarray:
    """
    Hopf projection S^3 -> S^2 through x.sigma = M(s)^-1 sigma3 M(s).

    Args:
        s: Unit quaternion batch

    Returns:
        np.ndarray: Unit 3-vectors of shape S + (3,)
    """
    m = quaternion_to_matrix(s)
    projected = np.matmul(np.linalg.inv(m), np.matmul(SIGMA[2], m))
    return np.stack(
        [
            projected[..., 1, 0].real,
            projected[..., 1, 0].imag,
            projected[..., 0, 0].real,
        ],
        axis=-1,
    )


def rotate_vector(s: Quaternion, v: Any) -> np.ndarray:
    """
    Rotate 3-vectors by conjugation, vec(s (v.e) s*).

    With s = exp(e3 alpha/2) this is the right-handed rotation by alpha about +z.

    Args:
        s: Unit quaternion batch
        v: Vectors of shape (..., 3), broadcast against s

    Returns:
        np.ndarray: Rotated vectors
    """
    return (s * Quaternion.pure(v) * s.conj()).v


if __name__ == "__main__":
    from monopole_quantization.quaternions.quaternion import qexp_pure

    print("🌐 Testing Pauli dictionary and Hopf projection...")
    e1, e2 = Quaternion.basis(1), Quaternion.basis(2)
    print(f"✅ pauli_check(e1, e2) = {pauli_check(e1, e2):.3g}")

    s = qexp_pure([0.0, 0.0, 1.0], np.pi / 4)
    print(f"✅ rotate e1 by pi/2 about z -> {rotate_vector(s, [1.0, 0.0, 0.0])}")
    print(f"✅ hopf_project(s) = {hopf_project(s)}")
