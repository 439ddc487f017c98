import json
import os
import tempfile
import unittest

from monopole_quantization.errors import ConfigError
from monopole_quantization.verification.suite_config import (
    DEFAULT_TOL_EXACT,
    SUITES,
    SuiteConfig,
    deserialize_suite_config,
    load_suite_config,
    serialize_suite_config,
)
from monopole_quantization.weyl.weyl_system import (
    FROZEN_WEYL_CONVENTION,
    WeylOrdering,
)


class TestSuiteConfig(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.temp_dir, "config.json")

    def tearDown(self):
        if os.path.exists(self.config_path):
            os.remove(self.config_path)
        os.rmdir(self.temp_dir)

    def test_defaults(self):
        """Test the default configuration"""
        config = SuiteConfig()
        self.assertEqual(config.seed, 42)
        self.assertEqual(config.samples, 10000)
        self.assertEqual(config.tol_exact, DEFAULT_TOL_EXACT)
        self.assertEqual(config.tol_fd, 1e-6)
        self.assertEqual(config.fd_step, 1e-4)
        self.assertEqual(config.r_min, 0.1)
        self.assertEqual(config.box, 3.0)
        self.assertEqual(config.suites, SUITES)
        self.assertEqual(config.weyl_convention, FROZEN_WEYL_CONVENTION)

    def test_suites_are_canonical(self):
        """Test that suites are stored in canonical order"""
        config = SuiteConfig(suites=["orbit", "quat"])
        self.assertEqual(config.suites, ("quat", "orbit"))

    def test_invalid_settings(self):
        """Test that invalid settings raise ConfigError"""
        with self.assertRaises(ConfigError):
            SuiteConfig(fd_step=0.1, r_min=0.1)
        with self.assertRaises(ConfigError):
            SuiteConfig(fd_step=0.5)
        with self.assertRaises(ConfigError):
            SuiteConfig(tol_exact=0.0)
        with self.assertRaises(ConfigError):
            SuiteConfig(samples=0)
        with self.assertRaises(ConfigError):
            SuiteConfig(seed=-1)
        with self.assertRaises(ConfigError):
            SuiteConfig(seed=2**64)
        with self.assertRaises(ConfigError):
            SuiteConfig(box=0.05)
        with self.assertRaises(ConfigError):
            SuiteConfig(suites=["quat", "gauge"])
        with self.assertRaises(ConfigError):
            SuiteConfig(suites=[])
        with self.assertRaises(ConfigError):
            SuiteConfig(workers=0)

    def test_config_errors_are_value_errors(self):
        """Test that ConfigError is a ValueError"""
        with self.assertRaises(ValueError):
            SuiteConfig(samples=0)

    def test_serialization(self):
        """Test serializing and deserializing a configuration"""
        config = SuiteConfig(seed=7, samples=123, suites=["weyl"], workers=4)
        data = serialize_suite_config(config)
        self.assertNotIn("workers", data)
        self.assertEqual(data["suites"], ["weyl"])
        self.assertEqual(data["weyl_ordering"], "symmetric")
        self.assertEqual(data["weyl_phase_sign"], -1)

        restored = deserialize_suite_config(data)
        self.assertEqual(serialize_suite_config(restored), data)

    def test_deserialize_convention(self):
        """Test that a non-default convention can be configured"""
        config = deserialize_suite_config(
            {"weyl_ordering": "ordered-PX", "weyl_phase_sign": 1}
        )
        self.assertEqual(config.weyl_convention.ordering, WeylOrdering.ORDERED_PX)
        self.assertEqual(config.weyl_convention.phase_sign, 1)

        with self.assertRaises(ConfigError):
            deserialize_suite_config({"weyl_ordering": "sideways"})

    def test_unknown_keys(self):
        """Test that unknown keys are rejected"""
        with self.assertRaises(ConfigError):
            deserialize_suite_config({"seed": 1, "colour": "blue"})

    def test_load_with_overrides(self):
        """Test loading from a file with explicit overrides on top"""
        with open(self.config_path, "w") as f:
            json.dump({"seed": 5, "samples": 50, "suites": ["quat", "ej"]}, f)

        config = load_suite_config(self.config_path, {"samples": 80})
        self.assertEqual(config.seed, 5)
        self.assertEqual(config.samples, 80)
        self.assertEqual(config.suites, ("quat", "ej"))

    def test_load_failures(self):
        """Test missing, malformed and non-object files"""
        with self.assertRaises(ConfigError):
            load_suite_config(os.path.join(self.temp_dir, "missing.json"))

        with open(self.config_path, "w") as f:
            f.write("{not json")
        with self.assertRaises(ConfigError):
            load_suite_config(self.config_path)

        with open(self.config_path, "w") as f:
            json.dump([1, 2, 3], f)
        with self.assertRaises(ConfigError):
            load_suite_config(self.config_path)

    def test_sample_domain(self):
        """Test that the sample domain mirrors the configuration"""
        domain = SuiteConfig(seed=3, samples=20, box=2.0).sample_domain()
        self.assertEqual(domain.seed, 3)
        self.assertEqual(domain.samples, 20)
        self.assertEqual(domain.box, 2.0)


if __name__ == '__main__':
    unittest.main()
