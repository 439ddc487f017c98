import unittest

import numpy as np

from monopole_quantization.errors import MomentumTooSmall, OffOrbit
from monopole_quantization.poincare.coadjoint import (
    CoadjointPoint,
    GroupFactor,
    casimirs,
    coad_apply,
    pauli_lubanski,
)
from monopole_quantization.poincare.orbit_chart import (
    OrbitChartPoint,
    chart_to_point,
    coad_q_action_check,
    orbit_residuals,
    point_to_chart,
    random_chart_point,
)

E3 = np.array([0.0, 0.0, 1.0])


class TestOrbitChart(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(23)
        self.chart = random_chart_point(self.rng, 100)

    def test_chart_to_point_example(self):
        """Test the embedding of (q = 0, p = e3, lambda = 2)"""
        y = chart_to_point(OrbitChartPoint(np.zeros(3), E3, 2.0))
        self.assertEqual(float(y.h), 1.0)
        self.assertTrue(np.allclose(y.p, E3))
        self.assertTrue(np.allclose(y.j, 2.0 * E3))
        self.assertTrue(np.allclose(y.k, 0.0))

    def test_point_to_chart_example(self):
        """Test the inverse of the embedding example"""
        c = point_to_chart(CoadjointPoint(1.0, E3, 2.0 * E3, np.zeros(3)))
        self.assertTrue(np.allclose(c.q, 0.0))
        self.assertTrue(np.allclose(c.p, E3))
        self.assertAlmostEqual(float(c.helicity), 2.0, places=15)

    def test_round_trip(self):
        """Test that the chart maps are mutually inverse"""
        y = chart_to_point(self.chart)
        back = point_to_chart(y)
        self.assertLess(np.max(np.abs(back.q - self.chart.q)), 1e-12)
        self.assertLess(np.max(np.abs(back.p - self.chart.p)), 1e-12)
        self.assertLess(np.max(np.abs(back.helicity - self.chart.helicity)), 1e-12)
        again = chart_to_point(back)
        self.assertLess(np.max(np.abs(again.as_array() - y.as_array())), 1e-12)

    def test_chart_points_are_massless(self):
        """Test C1 = C2 = 0 and w parallel to (h, p)"""
        y = chart_to_point(self.chart)
        c1, c2 = casimirs(y)
        self.assertLess(np.max(np.abs(c1)), 1e-12)
        self.assertLess(np.max(np.abs(c2)), 1e-10)
        w0, w = pauli_lubanski(y)
        lam = self.chart.helicity
        self.assertTrue(np.allclose(w0, lam * y.h))
        self.assertTrue(np.allclose(w, lam[..., None] * y.p))
        self.assertLess(np.max(orbit_residuals(y)), 1e-12)

    def test_off_orbit(self):
        """Test that massive points and small energies are rejected"""
        with self.assertRaises(OffOrbit):
            point_to_chart(CoadjointPoint(1.0, 1e-3 * E3, np.zeros(3), np.zeros(3)))
        with self.assertRaises(OffOrbit):
            point_to_chart(CoadjointPoint(-1.0, E3, np.zeros(3), np.zeros(3)))
        with self.assertRaises(MomentumTooSmall):
            OrbitChartPoint(np.zeros(3), np.zeros(3), 1.0)

    def test_q_action(self):
        """Test the closed-form action on q"""
        translation = GroupFactor.space_translation([0.3, -0.1, 2.0])
        self.assertLess(coad_q_action_check(translation, self.chart), 1e-12)

        rotation = GroupFactor.rotation(2.1, [1.0, -1.0, 0.5])
        self.assertLess(coad_q_action_check(rotation, self.chart), 1e-10)

        boost = GroupFactor.boost(0.9, [0.0, 1.0, 1.0])
        self.assertLess(coad_q_action_check(boost, self.chart), 1e-10)

    def test_time_translation_example(self):
        """Test that time translation by a0 moves q = 0 to -a0 e3"""
        c = OrbitChartPoint(np.zeros(3), E3, 0.5)
        shift = GroupFactor.time_translation(1.5)
        moved = point_to_chart(coad_apply(shift, chart_to_point(c)))
        self.assertTrue(np.allclose(moved.q, -1.5 * E3))
        self.assertLess(coad_q_action_check(shift, c), 1e-15)


if __name__ == '__main__':
    unittest.main()
