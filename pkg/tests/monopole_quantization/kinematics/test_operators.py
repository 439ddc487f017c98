import unittest

import numpy as np

from monopole_quantization.errors import SingularPoint
from monopole_quantization.finite_difference import (
    central_derivative,
    partial_derivative,
)
from monopole_quantization.kinematics.cocycle import apply_U
from monopole_quantization.kinematics.operators import (
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
    nabla_field,
    p_field,
    presymplectic_extract,
    x_field,
)
from monopole_quantization.kinematics.probe_function import (
    ProbeFunction,
    generate_probe_function,
)
from monopole_quantization.kinematics.sample_domain import SampleDomain
from monopole_quantization.quaternions.quaternion import (
    LEVI_CIVITA,
    Quaternion,
    jdir,
    max_deviation,
)

NORTH = np.array([0.0, 0.0, 1.0])
AXES = np.eye(3)


class TestOperators(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(13)
        self.psi = generate_probe_function(self.rng)
        domain = SampleDomain(samples=100)
        self.x = domain.draw_points(self.rng, margin=0.5)

    def test_connection_examples(self):
        """Test the gauge potential on radial and transverse directions"""
        self.assertLess(
            max_deviation(
                connection_A([1.0, 0.0, 0.0], NORTH), Quaternion.pure([0.0, -0.5, 0.0])
            ),
            1e-16,
        )
        radial = self.x / np.linalg.norm(self.x, axis=-1)[..., None]
        gauge = connection_A(radial, self.x).components()
        self.assertLess(np.max(np.abs(gauge)), 1e-15)

        with self.assertRaises(SingularPoint):
            connection_A([1.0, 0.0, 0.0], [0.0, 0.0, 0.05])

    def test_connection_derivative_matches_fd(self):
        """Test the analytic d_i A_j against a fourth-order stencil"""
        for i in range(3):
            for j in range(3):
                fd = partial_derivative(
                    lambda z: connection_A(AXES[j], z), self.x, i, 1e-3, order=4
                )
                analytic = connection_derivative(i, j, self.x)
                self.assertLess(max_deviation(analytic, fd), 1e-8)

    def test_curvature_examples(self):
        """Test Omega_12 at the north pole and antisymmetry"""
        self.assertLess(
            max_deviation(curvature(0, 1, NORTH), Quaternion.pure([0.0, 0.0, -0.5])),
            1e-15,
        )
        for i in range(3):
            self.assertEqual(curvature_check(i, i, self.x, self.psi), 0.0)
        self.assertLess(
            max_deviation(curvature(0, 2, self.x), -1.0 * curvature(2, 0, self.x)),
            1e-15,
        )

    def test_curvature_matches_monopole_field(self):
        """Test the curvature against -(1/2) eps_ijk x_k/|x|^3 j(x)"""
        for i, j in ((0, 1), (1, 2), (2, 0)):
            self.assertLess(curvature_check(i, j, self.x, self.psi), 1e-12)

    def test_presymplectic_extract(self):
        """Test the real components of the curvature"""
        north = presymplectic_extract(0, 1, NORTH)
        self.assertTrue(np.allclose(north, [0.0, 0.0, -0.5]))
        self.assertLess(np.max(np.abs(curvature(0, 1, self.x).w)), 1e-15)
        forward = presymplectic_extract(1, 2, self.x)
        self.assertTrue(np.allclose(forward, -presymplectic_extract(2, 1, self.x)))

    def test_apply_J(self):
        """Test J^2 = -1, unitarity and the north-pole value"""
        value = self.psi(self.x)
        twice = apply_J(apply_J(value, self.x), self.x)
        self.assertLess(max_deviation(twice, -1.0 * value), 1e-14)
        self.assertTrue(np.allclose(apply_J(value, self.x).norm(), value.norm()))
        north = apply_J(Quaternion.one(), NORTH)
        self.assertLess(max_deviation(north, Quaternion.basis(3)), 1e-16)

    def test_apply_X(self):
        """Test X_i as real scalar multiplication"""
        result = apply_X(0, Quaternion.basis(2), [2.0, 0.0, 0.0])
        self.assertEqual(max_deviation(result, 2.0 * Quaternion.basis(2)), 0.0)
        value = self.psi(self.x)
        xj = apply_X(1, apply_J(value, self.x), self.x)
        jx = apply_J(apply_X(1, value, self.x), self.x)
        self.assertLess(max_deviation(xj, jx), 1e-14)
        with self.assertRaises(ValueError):
            apply_X(3, value, self.x)

    def test_nabla_constant_probe(self):
        """Test that nabla of a constant is the gauge term alone"""
        q0 = Quaternion(0.5, [1.0, -1.0, 2.0])
        psi = ProbeFunction.constant(q0)
        u = np.array([0.0, 1.0, 0.0])
        expected = connection_A(u, self.x) * q0
        self.assertLess(max_deviation(apply_nabla(u, psi, self.x), expected), 1e-15)

    def test_nabla_is_translation_generator(self):
        """Test nabla_u psi = -d/dt U(t u) psi at t = 0"""
        u = np.array([0.48, -0.6, 0.64])
        derivative = central_derivative(
            lambda t: apply_U(t * u, self.psi, self.x), 1e-3, 4
        )
        nabla = apply_nabla(u, self.psi, self.x)
        self.assertLess(max_deviation(nabla, -1.0 * derivative), 1e-6)

    def test_nabla_on_fields_uses_finite_differences(self):
        """Test that nabla of a general field agrees with the analytic probe path"""
        field = lambda z: self.psi(z)  # noqa: E731
        analytic = apply_nabla(AXES[1], self.psi, self.x)
        numeric = apply_nabla(AXES[1], field, self.x)
        self.assertLess(max_deviation(analytic, numeric), 1e-8)

    def test_gccr_nabla_x(self):
        """Test [nabla_i, X_j] = delta_ij"""
        value = self.psi(self.x)
        for i in range(3):
            for j in range(3):
                nabla_x = apply_nabla(AXES[i], x_field(j, self.psi), self.x)
                x_nabla = apply_X(j, apply_nabla(AXES[i], self.psi, self.x), self.x)
                commutator = nabla_x - x_nabla
                expected = float(i == j) * value
                self.assertLess(max_deviation(commutator, expected), 1e-8)

    def test_nabla_commutator_is_curvature(self):
        """Test [nabla_1, nabla_2] psi = -(1/2)(x_3/|x|^3) J psi"""
        first = apply_nabla(AXES[0], nabla_field(AXES[1], self.psi), self.x)
        second = apply_nabla(AXES[1], nabla_field(AXES[0], self.psi), self.x)
        radius = np.linalg.norm(self.x, axis=-1)
        expected = (-0.5 * self.x[:, 2] / radius**3) * apply_J(self.psi(self.x), self.x)
        self.assertLess(max_deviation(first - second, expected), 1e-8)

    def test_momentum_commutator(self):
        """Test [P_i, P_j] psi = +(1/2) eps_ijk (x_k/|x|^3) J psi"""
        radius = np.linalg.norm(self.x, axis=-1)
        j_psi = apply_J(self.psi(self.x), self.x)
        for i, j in ((0, 1), (1, 2), (2, 0)):
            ij = apply_P(i, p_field(j, self.psi), self.x)
            ji = apply_P(j, p_field(i, self.psi), self.x)
            commutator = ij - ji
            curl = np.einsum("k,...k->...", LEVI_CIVITA[i, j], self.x)
            strength = 0.5 * curl / radius**3
            self.assertLess(max_deviation(commutator, strength * j_psi), 1e-8)

    def test_momentum_unfolds(self):
        """Test P_i psi = j(x) nabla_i psi and J nabla_i = nabla_i J"""
        for i in range(3):
            expected = jdir(self.x) * apply_nabla(AXES[i], self.psi, self.x)
            momentum = apply_P(i, self.psi, self.x)
            self.assertLess(max_deviation(momentum, expected), 1e-15)
            swapped = apply_nabla(AXES[i], j_field(self.psi), self.x)
            self.assertLess(max_deviation(momentum, swapped), 1e-8)

    def test_rotation_generators(self):
        """Test L_i on constants, [L_i, J] = 0 and [L1, L2] = -L3"""
        one = ProbeFunction.constant(Quaternion.one())
        for i in range(3):
            expected = -0.5 * Quaternion.basis(i + 1)
            constant = expected * np.ones(len(self.x))
            self.assertLess(max_deviation(apply_L(i, one, self.x), constant), 1e-15)

            lj = apply_L(i, j_field(self.psi), self.x)
            jl = apply_J(apply_L(i, self.psi, self.x), self.x)
            self.assertLess(max_deviation(lj, jl), 1e-8)

        l1_l2 = apply_L(0, l_field(1, self.psi), self.x)
        l2_l1 = apply_L(1, l_field(0, self.psi), self.x)
        expected = -1.0 * apply_L(2, self.psi, self.x)
        self.assertLess(max_deviation(l1_l2 - l2_l1, expected), 1e-8)


if __name__ == '__main__':
    unittest.main()
