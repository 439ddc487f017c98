import unittest

from monopole_quantization.verification.checks.check_context import CheckContext
from monopole_quantization.verification.checks.weyl_checks import CHECKS
from monopole_quantization.verification.suite_config import SuiteConfig
from monopole_quantization.weyl.weyl_system import WeylConvention, WeylOrdering


class TestWeylChecks(unittest.TestCase):
    def setUp(self):
        self.ctx = CheckContext(SuiteConfig(samples=300, suites=["weyl"]))

    def test_all_checks_pass(self):
        """Test every Weyl-system check under the frozen convention"""
        for name, check in CHECKS.items():
            with self.subTest(check=name):
                result = check(self.ctx, name)
                self.assertEqual(result.suite, "weyl")
                self.assertTrue(result.passed, f"{name}: {result.max_abs_err}")

    def test_oracle_reports_selection(self):
        """Test that the oracle names the selected convention"""
        name = "weyl.convention_oracle"
        result = CHECKS[name](self.ctx, name)
        self.assertIn("selected", result.convention_notes)
        self.assertIn("symmetric", result.convention_notes)

    def test_wrong_convention_fails(self):
        """Test that configuring a different convention fails the composition checks"""
        wrong = WeylConvention(WeylOrdering.ORDERED_PX, 1)
        ctx = CheckContext(SuiteConfig(samples=300, weyl_convention=wrong))
        for name in ("weyl.convention_oracle", "weyl.general_composition"):
            with self.subTest(check=name):
                self.assertFalse(CHECKS[name](ctx, name).passed)


if __name__ == '__main__':
    unittest.main()
