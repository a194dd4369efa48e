# test/test_data/test_dataset.py
import tempfile
import unittest

from dpenet.data import (DirectoryDataset, InMemoryDataset, Purpose, generate_synthetic_dataset,
                         split_dataset, write_dataset)
from dpenet.errors import DataError


class TestDatasets(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.samples = generate_synthetic_dataset(10, (16, 16), seed=1)
        cls.split = split_dataset([s.id for s in cls.samples], seed=1)

    def test_batch_shapes(self):
        data = InMemoryDataset(self.samples, self.split)
        images, masks = data.batch(list(self.split.train[:3]), Purpose.TRAIN)
        self.assertEqual(images.shape.dims, (3, 3, 16, 16))
        self.assertEqual(masks.shape.dims, (3, 1, 16, 16))

    def test_access_log(self):
        data = InMemoryDataset(self.samples, self.split)
        data.batch(list(self.split.train), Purpose.TRAIN)
        data.sample(self.split.test[0], Purpose.EVAL)
        self.assertEqual(data.accessed(Purpose.TRAIN), set(self.split.train))
        self.assertEqual(data.accessed(Purpose.EVAL), {self.split.test[0]})

    def test_resizing_on_read(self):
        data = InMemoryDataset(self.samples, self.split, hw=(32, 24))
        s = data.sample(self.samples[0].id, Purpose.EVAL)
        self.assertEqual(s.hw, (32, 24))

    def test_directory_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            write_dataset(tmp, self.samples, self.split)
            data = DirectoryDataset(tmp)
            self.assertEqual(data.split, self.split)
            first = self.samples[0]
            loaded = data.sample(first.id, Purpose.EVAL)
            self.assertTrue(loaded.mask.equal(first.mask))
            self.assertEqual(loaded.hw, first.hw)

    def test_missing_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(DataError):
                DirectoryDataset(tmp)
            write_dataset(tmp, self.samples, self.split)
            data = DirectoryDataset(tmp)
            data.mask_path(self.samples[0].id).unlink()
            with self.assertRaises(DataError):
                data.sample(self.samples[0].id, Purpose.EVAL)

    def test_unknown_ids(self):
        with self.assertRaises(DataError):
            InMemoryDataset(self.samples[:5], self.split)
        data = InMemoryDataset(self.samples, self.split)
        with self.assertRaises(DataError):
            data.batch([], Purpose.TRAIN)


if __name__ == "__main__":
    unittest.main()
