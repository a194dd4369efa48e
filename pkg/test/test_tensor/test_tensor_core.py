# test/test_tensor/test_tensor_core.py
import unittest

import numpy as np
import numpy.testing as npt

from dpenet import Config
from dpenet.errors import NonFiniteError, ShapeError
from dpenet.tensor import SeededRng, Shape, Tensor, ones, stack, tensor_new, zeros


class TestShape(unittest.TestCase):
    def test_rank_and_numel(self):
        s = Shape((2, 3, 4, 5))
        self.assertEqual(s.rank, 4)
        self.assertEqual(s.numel, 120)
        self.assertEqual(str(s), "(2, 3, 4, 5)")
        self.assertEqual(list(s), [2, 3, 4, 5])

    def test_invalid_shapes(self):
        """Extensiones nulas o negativas y rango > 4 se rechazan."""
        with self.assertRaises(ShapeError):
            Shape((2, 0))
        with self.assertRaises(ShapeError):
            Shape((1, 2, 3, 4, 5))
        with self.assertRaises(ShapeError):
            Shape((-1,))

    def test_empty_channel_axis_allowed(self):
        self.assertEqual(Shape((1, 0, 2, 2)).numel, 0)


class TestTensorNew(unittest.TestCase):
    def test_constant_fill(self):
        t = tensor_new((2, 3), 0.5)
        npt.assert_array_equal(t.data, np.full((2, 3), 0.5, dtype=np.float32))
        self.assertEqual(t.dtype, np.float32)

    def test_row_major_values(self):
        """Una lista se interpreta en orden de filas."""
        t = tensor_new((2, 2), [1.0, 2.0, 3.0, 4.0])
        self.assertEqual(t.tolist(), [[1.0, 2.0], [3.0, 4.0]])

    def test_wrong_value_count(self):
        with self.assertRaises(ShapeError):
            tensor_new((2, 2), [1.0, 2.0, 3.0])

    def test_non_finite_fill(self):
        with self.assertRaises(NonFiniteError):
            tensor_new((2,), float("nan"))
        with self.assertRaises(NonFiniteError):
            Tensor([1.0, float("inf")])

    def test_zeros_ones(self):
        self.assertEqual(zeros((3,)).data.sum(), 0.0)
        self.assertEqual(ones((2, 2)).data.sum(), 4.0)

    def test_precision_switch(self):
        with Config.use_precision("float64"):
            self.assertEqual(zeros((2,)).dtype, np.float64)
        self.assertEqual(zeros((2,)).dtype, np.float32)


class TestTensorValue(unittest.TestCase):
    def test_buffer_is_read_only(self):
        t = ones((2, 2))
        with self.assertRaises(ValueError):
            t.data[0, 0] = 5.0
        copy = t.numpy()
        copy[0, 0] = 5.0
        self.assertEqual(t.data[0, 0], 1.0)

    def test_item(self):
        self.assertEqual(tensor_new((1,), 3.0).item(), 3.0)
        with self.assertRaises(ShapeError):
            ones((2,)).item()

    def test_as_leaf_shares_values(self):
        t = tensor_new((2,), [1.0, 2.0])
        leaf = t.as_leaf()
        self.assertTrue(leaf.requires_grad)
        self.assertFalse(t.requires_grad)
        self.assertTrue(leaf.equal(t))

    def test_stack(self):
        batch = stack([zeros((1, 2, 2)), ones((1, 2, 2))])
        self.assertEqual(batch.shape.dims, (2, 1, 2, 2))
        with self.assertRaises(ShapeError):
            stack([])


class TestSeededRng(unittest.TestCase):
    def test_same_seed_same_sequence(self):
        a, b = SeededRng(7), SeededRng(7)
        npt.assert_array_equal(a.normal((3, 3)), b.normal((3, 3)))
        self.assertEqual(a.permutation(10), b.permutation(10))

    def test_derive_is_independent_of_order(self):
        """El flujo de la muestra i depende sólo de (semilla, i)."""
        root = SeededRng(3)
        first = root.derive(5).normal((4,))
        root.normal((100,))
        npt.assert_array_equal(first, SeededRng(3).derive(5).normal((4,)))

    def test_seed_range(self):
        with self.assertRaises(ValueError):
            SeededRng(-1)


if __name__ == "__main__":
    unittest.main()
