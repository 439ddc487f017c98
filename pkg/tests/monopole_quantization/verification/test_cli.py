import contextlib
import io
import json
import os
import shutil
import tempfile
import unittest

from monopole_quantization.verification.cli import (
    EXIT_FAILED,
    EXIT_PASSED,
    EXIT_USAGE,
    build_parser,
    main,
)


class TestCli(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def _main(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = main(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def test_parser(self):
        """Test flag parsing"""
        args = build_parser().parse_args(
            ["--suites", "quat, orbit", "--rmin", "0.2", "--timing"]
        )
        self.assertEqual(args.suites, ["quat", "orbit"])
        self.assertEqual(args.rmin, 0.2)
        self.assertTrue(args.timing)
        self.assertIsNone(args.seed)
        self.assertEqual(args.log_level, "WARNING")

    def test_passing_run_writes_reports(self):
        """Test a passing run with JSON and CSV output"""
        json_path = os.path.join(self.temp_dir, "report.json")
        csv_path = os.path.join(self.temp_dir, "report.csv")
        code, out, _ = self._main(
            "--suites", "quat", "--samples", "50", "--json", json_path, "--csv",
            csv_path,
        )
        self.assertEqual(code, EXIT_PASSED)
        self.assertIn("All", out)

        with open(json_path) as f:
            document = json.load(f)
        self.assertTrue(document["all_passed"])
        self.assertEqual(document["config"]["samples"], 50)
        self.assertTrue(os.path.exists(csv_path))

    def test_failing_run(self):
        """Test exit status 1 when a check exceeds its tolerance"""
        code, out, _ = self._main(
            "--suites", "quat", "--samples", "50", "--tol-exact", "1e-30"
        )
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn("failed", out)

    def test_invalid_configuration(self):
        """Test exit status 2 for invalid settings"""
        code, _, err = self._main(
            "--suites", "quat", "--fd-step", "0.2", "--rmin", "0.1"
        )
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("fd_step", err)

        code, _, err = self._main("--suites", "quat,gauge")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("gauge", err)

        code, _, _ = self._main("--config", os.path.join(self.temp_dir, "missing.json"))
        self.assertEqual(code, EXIT_USAGE)

    def test_config_file_with_flag_override(self):
        """Test that flags take precedence over the configuration file"""
        config_path = os.path.join(self.temp_dir, "config.json")
        json_path = os.path.join(self.temp_dir, "report.json")
        with open(config_path, "w") as f:
            json.dump({"seed": 9, "samples": 1000, "suites": ["quat"]}, f)

        code, _, _ = self._main(
            "--config", config_path, "--samples", "40", "--json", json_path
        )
        self.assertEqual(code, EXIT_PASSED)
        with open(json_path) as f:
            document = json.load(f)
        self.assertEqual(document["seed"], 9)
        self.assertEqual(document["config"]["samples"], 40)

    def test_unwritable_report(self):
        """Test exit status 2 when the report cannot be written"""
        blocker = os.path.join(self.temp_dir, "blocker")
        with open(blocker, "w") as f:
            f.write("x")
        code, _, err = self._main(
            "--suites", "quat", "--samples", "20", "--json",
            os.path.join(blocker, "r.json"),
        )
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("error", err)


if __name__ == '__main__':
    unittest.main()
