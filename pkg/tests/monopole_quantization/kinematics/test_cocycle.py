import unittest

import numpy as np

from monopole_quantization.errors import (
    AntipodalTranslation,
    DegenerateTriangle,
    IllConditioned,
    SingularPoint,
)
from monopole_quantization.kinematics.cocycle import (
    apply_M,
    apply_U,
    cocycle_w,
    geometric_phase_admissible,
    geometric_phase_ratio,
    multiplier_m,
    solid_angle,
    translated_field,
)
from monopole_quantization.kinematics.probe_function import generate_probe_function
from monopole_quantization.kinematics.sample_domain import SampleDomain
from monopole_quantization.quaternions.quaternion import (
    Quaternion,
    UnitQuaternion,
    max_deviation,
)


class TestCocycle(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(5)
        self.psi = generate_probe_function(self.rng)
        self.domain = SampleDomain(samples=500)

    def _admissible_triples(self, count=500):
        x = self.domain.draw_points(self.rng, count, margin=0.5)
        a = self.rng.uniform(-0.5, 0.5, (count, 3))
        b = self.rng.uniform(-0.5, 0.5, (count, 3))
        mask = (
            self.domain.translation_admissible(b, x)
            & self.domain.translation_admissible(a, x + b)
            & self.domain.translation_admissible(a + b, x)
        )
        return a[mask], b[mask], x[mask]

    def test_cocycle_examples(self):
        """Test the cocycle at zero, perpendicular and collinear translations"""
        x = np.array([1.0, 0.0, 0.0])
        one = Quaternion.one()
        self.assertEqual(max_deviation(cocycle_w(np.zeros(3), x), one), 0.0)

        expected = Quaternion(np.cos(np.pi / 8), [0.0, 0.0, np.sin(np.pi / 8)])
        self.assertLess(max_deviation(cocycle_w([0.0, 1.0, 0.0], x), expected), 1e-15)

        self.assertEqual(max_deviation(cocycle_w([2.0, 0.0, 0.0], x), one), 0.0)

    def test_cocycle_errors(self):
        """Test singular and antipodal configurations"""
        with self.assertRaises(SingularPoint):
            cocycle_w([1.0, 0.0, 0.0], [0.0, 0.0, 0.0])
        with self.assertRaises(SingularPoint):
            cocycle_w([-1.0, 0.0, 0.0], [1.0, 0.0, 0.0])
        with self.assertRaises(AntipodalTranslation):
            cocycle_w([-2.0, 0.0, 0.0], [1.0, 0.0, 0.0])

    def test_cocycle_is_unit_and_inverts(self):
        """Test |w| = 1 and w(-a; x + a) w(a; x) = 1"""
        a, _, x = self._admissible_triples()
        w = cocycle_w(a, x)
        self.assertLess(np.max(np.abs(w.norm() - 1.0)), 1e-14)
        back = cocycle_w(-a, x + a) * w
        self.assertLess(max_deviation(back, Quaternion.one(back.shape)), 1e-12)

    def test_apply_U_identity(self):
        """Test U(0) psi = psi"""
        x = self.domain.draw_points(self.rng, 20)
        translated = apply_U(np.zeros(3), self.psi, x)
        self.assertEqual(max_deviation(translated, self.psi(x)), 0.0)

    def test_translation_composition(self):
        """Test U(a) U(b) psi = U(a + b) M(a, b) psi"""
        a, b, x = self._admissible_triples()
        y = x + a + b
        lhs = apply_U(a, translated_field(b, self.psi), y)
        rhs = apply_U(a + b, lambda z: apply_M(a, b, self.psi, z), y)
        self.assertLess(max_deviation(lhs, rhs), 1e-12)

    def test_multiplier_examples(self):
        """Test m = 1 for inverse pairs, zero translations and planar configurations"""
        x = np.array([1.0, 0.5, -0.3])
        a = np.array([0.2, -0.1, 0.4])
        one = Quaternion.one()
        self.assertLess(max_deviation(multiplier_m(a, -a, x), one), 1e-15)
        self.assertLess(max_deviation(multiplier_m(np.zeros(3), a, x), one), 1e-15)
        self.assertLess(max_deviation(multiplier_m(a, np.zeros(3), x), one), 1e-15)

        planar = multiplier_m([0.0, 0.3, 0.0], [-0.2, 0.1, 0.0], [1.0, 0.2, 0.0])
        self.assertLess(max_deviation(planar, one), 1e-12)
        self.assertIsInstance(planar, UnitQuaternion)

    def test_solid_angle(self):
        """Test the octant, degenerate triangles and orientation"""
        e1, e2, e3 = np.eye(3)
        self.assertAlmostEqual(float(solid_angle(e1, e2, e3)), np.pi / 2, places=14)
        self.assertAlmostEqual(float(solid_angle(e2, e1, e3)), -np.pi / 2, places=14)
        self.assertEqual(float(solid_angle(e1, e1, e3)), 0.0)

        with self.assertRaises(DegenerateTriangle):
            solid_angle(e1, 2.0 * e1 + [0.0, 1e-6, 0.0], e3)
        with self.assertRaises(DegenerateTriangle):
            solid_angle(np.zeros(3), e2, e3)

    def test_geometric_phase_ratio(self):
        """Test that the phase-to-area ratio is a constant of magnitude 1/2"""
        a, b, x = self._admissible_triples(2000)
        mask = geometric_phase_admissible(a, b, x)
        self.assertGreater(int(mask.sum()), 100)
        ratios = geometric_phase_ratio(a[mask], b[mask], x[mask])
        self.assertLess(np.max(ratios) - np.min(ratios), 1e-6)
        self.assertAlmostEqual(abs(float(np.median(ratios))), 0.5, places=6)

    def test_geometric_phase_degenerate(self):
        """Test that coplanar configurations through the origin are excluded"""
        a = np.array([0.0, 0.3, 0.0])
        b = np.array([-0.2, 0.1, 0.0])
        x = np.array([1.0, 0.2, 0.0])
        self.assertFalse(bool(geometric_phase_admissible(a, b, x)))
        with self.assertRaises(IllConditioned):
            geometric_phase_ratio(a, b, x)


if __name__ == '__main__':
    unittest.main()
