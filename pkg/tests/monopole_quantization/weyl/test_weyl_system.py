import unittest

import numpy as np

from monopole_quantization.kinematics.cocycle import apply_U, multiplier_m
from monopole_quantization.kinematics.probe_function import generate_probe_function
from monopole_quantization.kinematics.sample_domain import SampleDomain
from monopole_quantization.quaternions.quaternion import (
    Quaternion,
    jdir,
    max_deviation,
    qexp_pure,
)
from monopole_quantization.weyl.weyl_system import (
    FROZEN_WEYL_CONVENTION,
    ConventionSelection,
    WeylConvention,
    WeylLabel,
    WeylOrdering,
    composition_admissible,
    mixed_sector_labels,
    ordering_defect,
    select_weyl_convention,
    weyl_compose_defect,
    weyl_form_agreement,
    weyl_T,
)


class TestWeylSystem(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(21)
        self.psi = generate_probe_function(self.rng)
        self.domain = SampleDomain(samples=300, seed=9)
        self.x = self.domain.draw_points(self.rng, margin=1.0)
        self.a = np.array([0.3, -0.2, 0.1])
        self.a_prime = np.array([0.5, 0.1, -0.4])

    def _composition(self, alpha, beta, convention=FROZEN_WEYL_CONVENTION):
        mask = composition_admissible(alpha, beta, self.x, self.domain)
        alpha = WeylLabel(alpha.a[mask], alpha.a_prime[mask])
        beta = WeylLabel(beta.a[mask], beta.a_prime[mask])
        x = self.x[mask]
        result = weyl_compose_defect(alpha, beta, self.psi, x, convention)
        return result, alpha, beta, x

    def _batch(self, translation, position):
        count = len(self.x)
        zeros = np.zeros((count, 3))
        a = self.rng.uniform(-1.0, 1.0, (count, 3)) if translation else zeros
        a_prime = self.rng.uniform(-1.0, 1.0, (count, 3)) if position else zeros
        return WeylLabel(a, a_prime)

    def test_label_validation(self):
        """Test that malformed labels raise ValueError"""
        with self.assertRaises(ValueError):
            WeylLabel([0.0, 0.0], [0.0, 0.0, 0.0])
        with self.assertRaises(ValueError):
            WeylLabel([np.nan, 0.0, 0.0], [0.0, 0.0, 0.0])

    def test_label_arithmetic(self):
        """Test label addition and the symplectic pairing"""
        alpha = WeylLabel(self.a, self.a_prime)
        beta = WeylLabel(self.a_prime, self.a)
        total = alpha + beta
        self.assertTrue(np.allclose(total.a, self.a + self.a_prime))
        expected = np.dot(self.a, self.a) - np.dot(self.a_prime, self.a_prime)
        pairing = float(alpha.symplectic_pairing(beta))
        self.assertAlmostEqual(pairing, expected, places=15)

    def test_zero_label_is_identity(self):
        """Test T(0, 0) psi = psi for every ordering"""
        label = WeylLabel(np.zeros(3), np.zeros(3))
        for ordering in WeylOrdering:
            value = weyl_T(label, ordering, self.psi, self.x)
            self.assertLess(max_deviation(value, self.psi(self.x)), 1e-15)

    def test_translation_label_is_cocycle_translation(self):
        """Test T(a, 0) psi = U(a) psi for every ordering"""
        label = WeylLabel(self.a, np.zeros(3))
        expected = apply_U(self.a, self.psi, self.x)
        for ordering in WeylOrdering:
            value = weyl_T(label, ordering, self.psi, self.x)
            self.assertLess(max_deviation(value, expected), 1e-14)

    def test_position_label_is_phase(self):
        """Test T(0, a') psi = exp(j(x) a'.x) psi for every ordering"""
        label = WeylLabel(np.zeros(3), self.a_prime)
        expected = qexp_pure(jdir(self.x), self.x @ self.a_prime) * self.psi(self.x)
        for ordering in WeylOrdering:
            value = weyl_T(label, ordering, self.psi, self.x)
            self.assertLess(max_deviation(value, expected), 1e-14)

    def test_form_agreement(self):
        """Test that the closed forms agree on pure labels only"""
        translation = weyl_form_agreement(
            WeylLabel(self.a, np.zeros(3)), self.psi, self.domain
        )
        self.assertLess(translation.max_deviation, 1e-12)
        self.assertTrue(translation.agrees)
        self.assertEqual(translation.samples_used + translation.samples_skipped, 300)

        position = weyl_form_agreement(
            WeylLabel(np.zeros(3), self.a_prime), self.psi, self.domain
        )
        self.assertLess(position.max_deviation, 1e-12)

        general = weyl_form_agreement(
            WeylLabel(self.a, self.a_prime), self.psi, self.domain
        )
        self.assertFalse(general.agrees)
        self.assertLess(general.defect_norm_error, 1e-10)

    def test_translation_sector(self):
        """Test that pure translations compose with the multiplier"""
        result, alpha, beta, x = self._composition(
            self._batch(True, False), self._batch(True, False)
        )
        self.assertGreater(result.samples_used, 200)
        m = multiplier_m(alpha.a, beta.a, x - alpha.a - beta.a)
        used = result.used
        self.assertLess(max_deviation(result.defect[used], m[used]), 1e-12)
        self.assertLess(result.max_deviation(), 1e-12)

    def test_position_sector(self):
        """Test that pure position phases commute"""
        result, _, _, _ = self._composition(
            self._batch(False, True), self._batch(False, True)
        )
        defect = result.defect[result.used]
        self.assertLess(max_deviation(defect, Quaternion.one(defect.shape)), 1e-12)

    def test_general_composition(self):
        """Test the composition law and its ordering-derived form on general labels"""
        result, alpha, beta, x = self._composition(
            self._batch(True, True), self._batch(True, True)
        )
        self.assertLess(result.max_deviation(), 1e-10)
        self.assertLess(result.max_norm_error(), 1e-10)

        derived = ordering_defect(
            alpha, beta, x - alpha.a - beta.a, FROZEN_WEYL_CONVENTION.ordering
        )
        self.assertLess(
            max_deviation(result.defect[result.used], derived[result.used]), 1e-10
        )

    def test_wrong_convention_is_detected(self):
        """Test that the opposite phase sign fails the mixed sector"""
        wrong = WeylConvention(WeylOrdering.SYMMETRIC, 1)
        result, _, _, _ = self._composition(
            self._batch(True, False), self._batch(False, True), wrong
        )
        self.assertGreater(result.max_deviation(), 1e-6)

    def test_convention_oracle(self):
        """Test that the oracle selects exactly the frozen convention"""
        selection = select_weyl_convention(self.psi, self.domain, check_id="oracle")
        self.assertEqual(selection.selected, FROZEN_WEYL_CONVENTION)
        self.assertLess(selection.margin(), 1e-10)
        self.assertEqual(len(selection.deviations), 6)
        self.assertGreater(selection.samples_used, 250)

    def test_empty_selection_margin(self):
        """Test that no selection has an infinite margin"""
        self.assertEqual(ConventionSelection(selected=None).margin(), float("inf"))

    def test_mixed_sector_labels(self):
        """Test the shapes of the mixed-sector label pairs"""
        pairs = mixed_sector_labels(self.rng, 5)
        (alpha, beta), (gamma, delta) = pairs
        self.assertEqual(alpha.a.shape, (5, 3))
        self.assertEqual(float(np.abs(alpha.a_prime).max()), 0.0)
        self.assertEqual(float(np.abs(beta.a).max()), 0.0)
        self.assertTrue(np.array_equal(gamma.a_prime, alpha.a))
        self.assertTrue(np.array_equal(delta.a, beta.a_prime))

    def test_convention_description(self):
        """Test that the description names the ordering and the sign"""
        text = FROZEN_WEYL_CONVENTION.describe()
        self.assertIn("symmetric", text)
        self.assertIn("-(1/2)", text)


if __name__ == '__main__':
    unittest.main()
