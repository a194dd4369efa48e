# test/test_data/test_split.py
import tempfile
import unittest
from pathlib import Path

from dpenet.data import DatasetSplit, read_split, split_dataset, split_sizes, write_split
from dpenet.errors import DataError, TensorFormatError


def _ids(n: int) -> list[str]:
    return [f"s{i:03d}" for i in range(n)]


class TestSplitSizes(unittest.TestCase):
    def test_sizes(self):
        self.assertEqual(split_sizes(612), (489, 61, 62))
        self.assertEqual(split_sizes(16), (12, 1, 3))
        self.assertEqual(split_sizes(10), (8, 1, 1))

    def test_split_is_partition(self):
        ids = _ids(37)
        split = split_dataset(ids, seed=4)
        self.assertEqual(sorted(split.all_ids()), ids)
        self.assertEqual(len(split.train), 29)
        self.assertEqual(len(split.test), 3)

    def test_partition_across_seeds(self):
        ids = _ids(612)
        for seed in range(1000):
            split = split_dataset(ids, seed)
            self.assertEqual((len(split.train), len(split.test), len(split.val)), (489, 61, 62))
            self.assertEqual(sorted(split.all_ids()), ids)
            self.assertEqual(len(set(split.train) | set(split.test) | set(split.val)), 612)

    def test_deterministic_and_seed_dependent(self):
        ids = _ids(50)
        self.assertEqual(split_dataset(ids, 1), split_dataset(ids, 1))
        self.assertNotEqual(split_dataset(ids, 1).train, split_dataset(ids, 2).train)

    def test_too_few_ids(self):
        with self.assertRaises(DataError):
            split_dataset(_ids(9), 0)
        with self.assertRaises(DataError):
            split_dataset(["a"] * 10, 0)

    def test_overlap_rejected(self):
        with self.assertRaises(DataError):
            DatasetSplit(("a", "b"), ("b",), ())


class TestSplitFile(unittest.TestCase):
    def test_file_round_trip(self):
        split = split_dataset(_ids(12), 3)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "split.txt"
            write_split(path, split)
            text = path.read_text(encoding="utf-8")
            self.assertTrue(text.startswith("[train]\n"))
            self.assertIn("[test]\n", text)
            self.assertIn("[val]\n", text)
            self.assertEqual(read_split(path), split)

    def test_malformed(self):
        for text in ("s1\n[train]\n", "[train]\n[test]\n", "[train]\n[test]\n[val]\n[extra]\n"):
            with self.assertRaises(TensorFormatError):
                DatasetSplit.from_text(text)

    def test_get_by_name(self):
        split = DatasetSplit(("a",), ("b",), ("c",))
        self.assertEqual(split.get("val"), ("c",))
        with self.assertRaises(DataError):
            split.get("all")


if __name__ == "__main__":
    unittest.main()
