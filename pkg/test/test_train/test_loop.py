# test/test_train/test_loop.py
import os
import tempfile
import unittest
from pathlib import Path

import pandas as pd

from dpenet.config_file import parse_config_text
from dpenet.data import DatasetSplit, InMemoryDataset, Purpose, generate_synthetic_dataset, split_dataset
from dpenet.errors import ConfigError, DataError
from dpenet.network import NetConfig, NetVariant, build_network
from dpenet.tensor import SeededRng
from dpenet.train import TrainConfig, TrainingLog, evaluate, train_loop
from dpenet.train.loop import LOG_COLUMNS

TINY = NetConfig(NetVariant.BOTH, stage_widths=(4, 8), input_hw=(16, 16))


def _dataset(n: int = 10, hw: tuple[int, int] = (16, 16), seed: int = 0) -> InMemoryDataset:
    samples = generate_synthetic_dataset(n, hw, seed)
    return InMemoryDataset(samples, split_dataset([s.id for s in samples], seed))


class TestTrainConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = TrainConfig()
        self.assertEqual((cfg.epochs, cfg.batch_size, cfg.lr, cfg.momentum), (40, 8, 1e-4, 0.9))
        self.assertTrue(cfg.shuffle)

    def test_lr_override(self):
        self.assertEqual(TrainConfig(lr_override=1e-3).effective_lr, 1e-3)

    def test_validation(self):
        for bad in (dict(epochs=0), dict(batch_size=0), dict(lr=-1.0), dict(lr=float("nan")),
                    dict(momentum=1.0), dict(threshold=0.0), dict(eval_every=0)):
            with self.assertRaises(ConfigError):
                TrainConfig(**bad).validate()
        TrainConfig(lr=0.0).validate()

    def test_from_entries(self):
        entries = parse_config_text("epochs = 3\nshuffle = false\nlr = 0.01\n")
        cfg = TrainConfig.from_entries(entries)
        self.assertEqual((cfg.epochs, cfg.shuffle, cfg.lr), (3, False, 0.01))
        with self.assertRaises(ConfigError):
            TrainConfig.from_entries(parse_config_text("epochs = tres\n"))


class TestTrainLoop(unittest.TestCase):
    def test_log_layout(self):
        """10 muestras -> 8 de entrenamiento; lote 3 -> 3 pasos por época (último parcial)."""
        data = _dataset()
        net = build_network(TINY, SeededRng(0))
        log = train_loop(net, data, TrainConfig(epochs=2, batch_size=3, lr=1e-3))
        frame = log.frame
        self.assertEqual(list(frame.columns), LOG_COLUMNS)
        self.assertEqual(len(log), 6)
        self.assertEqual(frame["step"].tolist(), [1, 2, 3, 4, 5, 6])
        self.assertEqual(frame["epoch"].tolist(), [1, 1, 1, 2, 2, 2])
        self.assertEqual(frame["mdice_val"].isna().tolist(), [True, True, False, True, True, False])

    def test_loss_sequence_is_reproducible(self):
        runs = []
        for _ in range(2):
            net = build_network(TINY, SeededRng(4))
            runs.append(train_loop(net, _dataset(), TrainConfig(epochs=1, batch_size=2, lr=1e-3, seed=4)).losses[:3])
        self.assertEqual(runs[0], runs[1])

    def test_training_touches_only_train_ids(self):
        data = _dataset(12)
        net = build_network(TINY, SeededRng(1))
        train_loop(net, data, TrainConfig(epochs=2, batch_size=4, lr=1e-3))
        self.assertEqual(data.accessed(Purpose.TRAIN), set(data.split.train))
        self.assertTrue(data.accessed(Purpose.EVAL) <= set(data.split.validation))
        touched = {sid for sid, _ in data.access_log}
        self.assertTrue(touched.isdisjoint(data.split.test))

    def test_zero_learning_rate_changes_only_buffers(self):
        data = _dataset()
        net = build_network(TINY, SeededRng(2))
        before = {k: v for k, v in net.named_parameters().items()}
        train_loop(net, data, TrainConfig(epochs=1, batch_size=4, lr=0.0))
        for name, tensor in net.named_parameters().items():
            self.assertTrue(tensor.equal(before[name]), name)

    def test_loss_decreases(self):
        data = _dataset(10)
        net = build_network(TINY, SeededRng(3))
        log = train_loop(net, data, TrainConfig(epochs=8, batch_size=4, lr=2e-2))
        per_epoch = log.epoch_losses()
        self.assertLess(float(per_epoch.iloc[-1]), float(per_epoch.iloc[0]))

    def test_csv_output(self):
        log = TrainingLog()
        log.add_step(1, 1, 0.5)
        log.add_step(1, 2, 0.25)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "log.csv"
            log.to_csv(path)
            lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "epoch,step,loss,mdice_val,miou_val")
        self.assertEqual(lines[2], "1,2,0.25,,")

    def test_empty_train_split(self):
        samples = generate_synthetic_dataset(10, (16, 16), 0)
        split = DatasetSplit((), tuple(s.id for s in samples[:5]), tuple(s.id for s in samples[5:]))
        with self.assertRaises(DataError):
            train_loop(build_network(TINY, SeededRng(0)), InMemoryDataset(samples, split), TrainConfig(epochs=1))


@unittest.skipUnless(os.environ.get("DPENET_SLOW") == "1", "entrenamiento largo: DPENET_SLOW=1")
class TestOverfit(unittest.TestCase):
    def test_desk_network_fits_training_set(self):
        """Configuración de escritorio sobre las 16 muestras: mDice de entrenamiento ≥ 0.95 en 200 épocas."""
        samples = generate_synthetic_dataset(16, (96, 128), seed=0)
        data = InMemoryDataset(samples, DatasetSplit(tuple(s.id for s in samples), (), ()))
        net = build_network(NetConfig(NetVariant.BOTH, (8, 16), 1, 3, (96, 128)), SeededRng(0))
        best = 0.0

        def on_epoch(epoch: int, log: TrainingLog) -> None:
            nonlocal best
            if epoch % 5 == 0:
                best = max(best, evaluate(net, data, list(data.split.train)).mdice)

        log = train_loop(net, data, TrainConfig(epochs=200, batch_size=8, lr=1e-3, momentum=0.9),
                         on_epoch=on_epoch)
        self.assertEqual(len(log), 400)
        self.assertGreaterEqual(best, 0.95)
        medians = pd.Series(log.epoch_losses().tolist()).rolling(20).median().dropna()
        self.assertLessEqual(float(medians.iloc[-1]), 1.05 * float(medians.min()))


if __name__ == "__main__":
    unittest.main()
