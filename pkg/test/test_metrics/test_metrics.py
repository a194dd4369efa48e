# test/test_metrics/test_metrics.py
import unittest

import numpy as np

from dpenet.errors import ConfigError, DataError, ShapeError
from dpenet.metrics import (ConfusionCounts, aggregate_mean, check_threshold, confusion_from_masks, dice, iou,
                            pixel_accuracy, pool, pooled_dice, pooled_iou)
from dpenet.tensor import SeededRng, Tensor, tensor_new


class TestConfusion(unittest.TestCase):
    def test_counts(self):
        pred = tensor_new((1, 2, 2), [0.9, 0.2, 0.7, 0.4])
        truth = tensor_new((1, 2, 2), [1.0, 1.0, 0.0, 0.0])
        (c,) = confusion_from_masks(pred, truth)
        self.assertEqual(c, ConfusionCounts(tp=1, fp=1, fn=1, tn=1))

    def test_threshold_is_inclusive(self):
        (c,) = confusion_from_masks(tensor_new((1, 1, 1), 0.5), tensor_new((1, 1, 1), 1.0))
        self.assertEqual(c.tp, 1)

    def test_batch_gives_one_entry_per_image(self):
        pred = Tensor(SeededRng(0).uniform(0.0, 1.0, (3, 1, 4, 4)))
        truth = tensor_new((3, 1, 4, 4), 1.0)
        counts = confusion_from_masks(pred, truth)
        self.assertEqual(len(counts), 3)
        self.assertTrue(all(c.total == 16 for c in counts))

    def test_swapping_prediction_and_truth(self):
        """Intercambiar predicción y verdad intercambia FP y FN."""
        rng = SeededRng(1)
        a = Tensor((rng.uniform(0.0, 1.0, (1, 8, 8)) > 0.5).astype(np.float32))
        b = Tensor((rng.uniform(0.0, 1.0, (1, 8, 8)) > 0.5).astype(np.float32))
        (ab,) = confusion_from_masks(a, b)
        (ba,) = confusion_from_masks(b, a)
        self.assertEqual(ab.swapped(), ba)
        self.assertEqual(dice(ab), dice(ba))

    def test_invalid_inputs(self):
        with self.assertRaises(ShapeError):
            confusion_from_masks(tensor_new((1, 2, 2), 0.1), tensor_new((1, 2, 3), 0.0))
        with self.assertRaises(DataError):
            confusion_from_masks(tensor_new((1, 2, 2), 0.1), tensor_new((1, 2, 2), 0.5))
        with self.assertRaises(ConfigError):
            confusion_from_masks(tensor_new((1, 2, 2), 0.1), tensor_new((1, 2, 2), 0.0), threshold=1.0)

    def test_threshold_range(self):
        self.assertEqual(check_threshold(), 0.5)
        self.assertEqual(check_threshold(0.25), 0.25)
        for bad in (0.0, 1.0, 7.0, -0.5):
            with self.assertRaises(ConfigError):
                check_threshold(bad)

    def test_counts_validation(self):
        with self.assertRaises(ValueError):
            ConfusionCounts(tp=-1)


class TestScores(unittest.TestCase):
    def test_values(self):
        c = ConfusionCounts(tp=50, fp=10, fn=20, tn=920)
        self.assertAlmostEqual(dice(c), 100 / 130)
        self.assertAlmostEqual(iou(c), 50 / 80)
        self.assertAlmostEqual(pixel_accuracy(c), 0.97)

    def test_perfect_and_disjoint(self):
        self.assertEqual(dice(ConfusionCounts(tp=7, tn=3)), 1.0)
        self.assertEqual(iou(ConfusionCounts(fp=4, fn=4)), 0.0)

    def test_empty_masks_score_one(self):
        c = ConfusionCounts(tn=100)
        self.assertEqual(dice(c), 1.0)
        self.assertEqual(iou(c), 1.0)
        self.assertEqual(pixel_accuracy(c), 1.0)

    def test_dice_iou_identity(self):
        """Dice = 2·IoU / (1 + IoU) e IoU ≤ Dice, ambos en [0, 1], en 1000 confusiones aleatorias."""
        rng = SeededRng(2)
        for _ in range(1000):
            c = ConfusionCounts(*(rng.integer(0, 10**6) for _ in range(4)))
            d, j = dice(c), iou(c)
            self.assertLess(abs(d - 2 * j / (1 + j)), 1e-12)
            self.assertLessEqual(j, d)
            for value in (d, j):
                self.assertGreaterEqual(value, 0.0)
                self.assertLessEqual(value, 1.0)

    def test_hand_derived_triple(self):
        c = ConfusionCounts(tp=50, fp=10, fn=10)
        self.assertLess(abs(dice(c) - 100 / 120), 1e-9)
        self.assertLess(abs(iou(c) - 50 / 70), 1e-9)

    def test_accuracy_of_empty_confusion(self):
        with self.assertRaises(DataError):
            pixel_accuracy(ConfusionCounts())

    def test_mean_versus_pooled(self):
        """La media por imagen y la confusión acumulada no coinciden en general."""
        counts = [ConfusionCounts(tp=1, fn=1, tn=2), ConfusionCounts(tp=90, fp=10, tn=0)]
        self.assertAlmostEqual(aggregate_mean([dice(c) for c in counts]), (2 / 3 + 180 / 190) / 2)
        self.assertAlmostEqual(pooled_dice(counts), 182 / 193)
        self.assertAlmostEqual(pooled_iou(counts), 91 / 102)
        self.assertEqual(pool(counts), ConfusionCounts(91, 10, 1, 2))

    def test_mean_of_nothing(self):
        with self.assertRaises(DataError):
            aggregate_mean([])


if __name__ == "__main__":
    unittest.main()
