# test/test_train/test_evaluation.py
import unittest

import numpy as np

from dpenet.data import InMemoryDataset, Purpose, generate_synthetic_dataset, split_dataset
from dpenet.errors import DataError
from dpenet.metrics import ConfusionCounts
from dpenet.network import NetConfig, build_network
from dpenet.tensor import SeededRng, Tensor, stack, tensor_new, zeros
from dpenet.train import evaluate, evaluate_predictions, predict, report_from_counts


class TestReports(unittest.TestCase):
    def test_perfect_prediction(self):
        masks = stack([Tensor(np.eye(4, dtype=np.float32)[None]), Tensor(np.zeros((1, 4, 4), np.float32))])
        report = evaluate_predictions(["a", "b"], masks, masks)
        self.assertEqual((report.mdice, report.miou, report.accuracy), (1.0, 1.0, 1.0))
        self.assertEqual(report.n_images, 2)
        self.assertEqual(report.rows["id"].tolist(), ["a", "b"])

    def test_per_image_mean_differs_from_pooled(self):
        counts = [ConfusionCounts(tp=1, fn=1, tn=2), ConfusionCounts(tp=90, fp=10)]
        report = report_from_counts(["x", "y"], counts)
        self.assertAlmostEqual(report.mdice, (2 / 3 + 180 / 190) / 2)
        self.assertAlmostEqual(report.pooled_dice, 182 / 193)
        self.assertNotAlmostEqual(report.mdice, report.pooled_dice)

    def test_record_fields(self):
        report = report_from_counts(["x"], [ConfusionCounts(tp=3, fp=1, fn=0, tn=4)])
        self.assertEqual(list(report.as_record()), ["mdice", "miou", "accuracy", "n_images"])
        self.assertTrue(report.record_line().startswith("mdice=0.857143 miou=0.750000"))

    def test_empty(self):
        with self.assertRaises(DataError):
            report_from_counts([], [])


class TestEvaluate(unittest.TestCase):
    def test_network_evaluation(self):
        samples = generate_synthetic_dataset(10, (16, 16), seed=2)
        data = InMemoryDataset(samples, split_dataset([s.id for s in samples], 2))
        net = build_network(NetConfig(stage_widths=(4, 8), input_hw=(16, 16)), SeededRng(0))
        ids = list(data.split.train)
        report = evaluate(net, data, ids, batch_size=3)
        self.assertEqual(report.n_images, len(ids))
        for value in (report.mdice, report.miou, report.accuracy):
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, 1.0)
        self.assertEqual(data.accessed(Purpose.TRAIN), set())

    def test_all_background_predictor(self):
        """Una cabeza que siempre predice fondo da mDice 0 e IoU ≤ Dice (ninguna máscara está vacía)."""
        samples = generate_synthetic_dataset(10, (16, 16), seed=4)
        data = InMemoryDataset(samples, split_dataset([s.id for s in samples], 4))
        net = build_network(NetConfig(stage_widths=(4, 8), input_hw=(16, 16)), SeededRng(0))
        head = net.state()["head.weight"]
        net.load_state({"head.weight": zeros(head.shape), "head.bias": tensor_new((1,), -10.0)})
        report = evaluate(net, data, list(data.split.train), batch_size=4)
        self.assertEqual(report.mdice, 0.0)
        self.assertLessEqual(report.miou, report.mdice)
        self.assertGreater(report.accuracy, 0.5)

    def test_predict_is_probability(self):
        net = build_network(NetConfig(stage_widths=(4,), input_hw=(8, 8)), SeededRng(0))
        prob = predict(net, Tensor(SeededRng(1).uniform(0.0, 1.0, (2, 3, 8, 8))))
        self.assertEqual(prob.shape.dims, (2, 1, 8, 8))
        self.assertTrue(np.all((prob.data >= 0.0) & (prob.data <= 1.0)))


if __name__ == "__main__":
    unittest.main()
