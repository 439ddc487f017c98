import unittest

import numpy as np

from monopole_quantization.finite_difference import partial_derivative
from monopole_quantization.kinematics.probe_function import (
    ProbeFunction,
    QuaternionFieldValue,
    generate_probe_function,
)
from monopole_quantization.quaternions.quaternion import Quaternion, max_deviation


class TestProbeFunction(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(3)
        self.probe = generate_probe_function(self.rng)
        self.points = self.rng.uniform(-2.0, 2.0, (50, 3))

    def test_generated_parameters(self):
        """Test that generated probes respect the width and center ranges"""
        self.assertGreaterEqual(self.probe.width, 2.5)
        self.assertLessEqual(self.probe.width, 3.5)
        self.assertTrue(np.all(np.abs(self.probe.center) <= 1.0))

    def test_value_at_center(self):
        """Test that the probe equals its amplitude at the center"""
        value = self.probe(self.probe.center)
        self.assertLess(max_deviation(value, self.probe.amplitude), 1e-15)

    def test_batch_shapes(self):
        """Test value and gradient shapes on a batch"""
        self.assertEqual(self.probe(self.points).shape, (50,))
        self.assertEqual(self.probe.gradient(self.points).shape, (50, 3))

    def test_gradient_matches_finite_differences(self):
        """Test the analytic gradient against central differences"""
        gradient = self.probe.gradient(self.points)
        for i in range(3):
            fd = partial_derivative(self.probe, self.points, i, 1e-5)
            self.assertLess(max_deviation(gradient[:, i], fd), 1e-8)

    def test_directional_derivative(self):
        """Test (u . d) psi as a combination of partial derivatives"""
        u = np.array([0.6, 0.0, 0.8])
        gradient = self.probe.gradient(self.points)
        expected = 0.6 * gradient[:, 0] + 0.8 * gradient[:, 2]
        actual = self.probe.directional_derivative(u, self.points)
        self.assertLess(max_deviation(actual, expected), 1e-14)

    def test_constant_probe(self):
        """Test that a constant probe has zero gradient everywhere"""
        q0 = Quaternion(1.0, [0.5, -0.5, 2.0])
        probe = ProbeFunction.constant(q0)
        expected = q0 * np.ones(50)
        self.assertLess(max_deviation(probe(self.points), expected), 1e-15)
        self.assertEqual(np.max(np.abs(probe.gradient(self.points).components())), 0.0)

    def test_invalid_parameters(self):
        """Test that invalid probe parameters raise ValueError"""
        amplitude = Quaternion.one()
        linear = Quaternion(np.zeros(3), np.zeros((3, 3)))
        with self.assertRaises(ValueError):
            ProbeFunction([0.0, 0.0], 1.0, amplitude, linear)
        with self.assertRaises(ValueError):
            ProbeFunction(np.zeros(3), 0.0, amplitude, linear)
        with self.assertRaises(ValueError):
            ProbeFunction(np.zeros(3), 1.0, Quaternion.one((2,)), linear)
        with self.assertRaises(ValueError):
            ProbeFunction(np.zeros(3), 1.0, amplitude, Quaternion.one((2,)))

    def test_field_value_rejects_non_finite(self):
        """Test that field values must be finite"""
        value = QuaternionFieldValue([1.0, 0.0, 0.0], Quaternion.one())
        self.assertEqual(value.at.shape, (3,))
        with self.assertRaises(ValueError):
            QuaternionFieldValue([np.nan, 0.0, 0.0], Quaternion.one())
        with self.assertRaises(ValueError):
            QuaternionFieldValue([1.0, 0.0, 0.0], Quaternion(np.inf, [0.0, 0.0, 0.0]))


if __name__ == '__main__':
    unittest.main()
