import re
import unittest

import numpy as np

from monopole_quantization.verification.checks.check_context import (
    CheckContext,
    all_admissible,
    max_abs,
)
from monopole_quantization.verification.checks.ej_checks import CHECKS
from monopole_quantization.verification.suite_config import SuiteConfig



class TestEjChecks(unittest.TestCase):
    def setUp(self):
        self.ctx = CheckContext(SuiteConfig(samples=300, suites=["ej"]))

    def test_all_checks_pass(self):
        """Test every kinematics check on a small sample"""
        for name, check in CHECKS.items():
            with self.subTest(check=name):
                result = check(self.ctx, name)
                self.assertEqual(result.suite, "ej")
                self.assertTrue(
                    result.passed,
                    f"{name}: {result.max_abs_err} > {result.tolerance} "
                    f"({result.samples_used} used, {result.samples_skipped} skipped)",
                )

    def test_geometric_phase_note(self):
        """Test that the fitted solid-angle constant is reported with magnitude 1/2"""
        name = "ej.geometric_phase_magnitude"
        result = CHECKS[name](self.ctx, name)
        match = re.search(r"fitted constant (-?[0-9.]+)", result.convention_notes)
        self.assertIsNotNone(match)
        self.assertAlmostEqual(abs(float(match.group(1))), 0.5, places=8)


class TestCheckHelpers(unittest.TestCase):
    def test_max_abs(self):
        """Test the peak over several arrays"""
        self.assertEqual(max_abs(np.array([1.0, -3.0]), np.array([[2.0]])), 3.0)
        self.assertEqual(max_abs(np.array([])), 0.0)
        self.assertTrue(np.isnan(max_abs(np.array([np.nan, 1.0]))))

    def test_all_admissible(self):
        """Test the AND of several translation masks"""
        domain = SuiteConfig().sample_domain()
        x = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        far = np.array([0.5, 0.0, 0.0])
        through_origin = np.array([-2.0, 0.0, 0.0])
        mask = all_admissible(domain, [(far, x), (through_origin, x)])
        np.testing.assert_array_equal(mask, [False, True])

        with self.assertRaises(ValueError):
            all_admissible(domain, [])


if __name__ == '__main__':
    unittest.main()
