# test/test_verification/test_gradient_suite.py
import unittest

from dpenet import Config
from dpenet.verification import CHECKS, run_gradient_suite


class TestGradientSuite(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.results = {r.name: r for r in run_gradient_suite(seed=0)}

    def test_every_check_runs(self):
        self.assertEqual(list(self.results), [name for name, _, _ in CHECKS])

    def test_operations_within_tolerance(self):
        """Operaciones y bloques: error relativo < 1e-5."""
        for name, result in self.results.items():
            if name == "network":
                continue
            with self.subTest(name=name):
                self.assertLess(result.error, 1e-5)

    def test_network_within_tolerance(self):
        self.assertLess(self.results["network"].error, 1e-4)

    def test_precision_restored(self):
        self.assertEqual(Config.precision, "float32")

    def test_subset(self):
        results = run_gradient_suite(seed=1, names=["relu", "sigmoid"])
        self.assertEqual([r.name for r in results], ["relu", "sigmoid"])
        self.assertTrue(all(r.passed for r in results))


if __name__ == "__main__":
    unittest.main()
