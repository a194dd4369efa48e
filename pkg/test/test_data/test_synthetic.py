# test/test_data/test_synthetic.py
import unittest

import numpy as np

from dpenet.data import generate_synthetic_dataset, sample_id
from dpenet.errors import DataError


class TestSyntheticDataset(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.samples = generate_synthetic_dataset(6, (32, 48), seed=7)

    def test_shapes_and_ranges(self):
        for s in self.samples:
            self.assertEqual(s.image.shape.dims, (3, 32, 48))
            self.assertEqual(s.mask.shape.dims, (1, 32, 48))
            self.assertGreaterEqual(float(s.image.data.min()), 0.0)
            self.assertLessEqual(float(s.image.data.max()), 1.0)
            self.assertTrue(np.isin(s.mask.data, (0.0, 1.0)).all())

    def test_foreground_fraction(self):
        """Entre el 1 % y el 30 % de los píxeles son pólipo."""
        for s in self.samples:
            fraction = float(s.mask.data.mean())
            self.assertGreaterEqual(fraction, 0.01)
            self.assertLessEqual(fraction, 0.30)

    def test_foreground_fraction_across_seeds(self):
        for seed in range(100):
            (s,) = generate_synthetic_dataset(1, (48, 64), seed=seed)
            fraction = float(s.mask.data.mean())
            self.assertGreaterEqual(fraction, 0.01)
            self.assertLessEqual(fraction, 0.30)

    def test_ids(self):
        self.assertEqual([s.id for s in self.samples], [sample_id(i) for i in range(6)])
        self.assertEqual(sample_id(12), "sample_0012")

    def test_deterministic(self):
        again = generate_synthetic_dataset(6, (32, 48), seed=7)
        for a, b in zip(self.samples, again):
            self.assertTrue(a.image.equal(b.image))
            self.assertTrue(a.mask.equal(b.mask))

    def test_prefix_stability(self):
        """La muestra i no depende de cuántas se generen."""
        fewer = generate_synthetic_dataset(2, (32, 48), seed=7)
        self.assertTrue(fewer[1].image.equal(self.samples[1].image))

    def test_different_seeds_differ(self):
        other = generate_synthetic_dataset(1, (32, 48), seed=8)
        self.assertFalse(other[0].image.equal(self.samples[0].image))

    def test_polyp_is_brighter(self):
        """El canal rojo del pólipo es más brillante que el fondo."""
        s = self.samples[0]
        inside = s.mask.data[0] == 1.0
        red = s.image.data[0]
        self.assertGreater(float(red[inside].mean()), float(red[~inside].mean()))

    def test_polyp_brightens_towards_centre(self):
        """Los píxeles del pólipo pegados al borde son más oscuros que los del interior."""
        for s in generate_synthetic_dataset(4, (96, 128), seed=3):
            inside = s.mask.data[0] == 1.0
            padded = np.pad(inside, 1, constant_values=False)
            core = inside & padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
            rim = inside & ~core
            green = s.image.data[1]
            self.assertGreater(float(green[core].mean()), float(green[rim].mean()) + 0.05)
            self.assertGreater(float(green[rim].min()), float(green[~inside].max()))

    def test_degenerate_parameters(self):
        with self.assertRaises(DataError):
            generate_synthetic_dataset(0, (32, 32), seed=0)
        with self.assertRaises(DataError):
            generate_synthetic_dataset(1, (8, 32), seed=0)


if __name__ == "__main__":
    unittest.main()
