# test/test_tensor/test_autodiff.py
import threading
import unittest

import numpy as np
import numpy.testing as npt

from dpenet import Config
from dpenet.errors import GradientCheckError, GraphError, ShapeError
from dpenet.nn import relu
from dpenet.tensor import (Tape, Tensor, backward, elementwise_add, elementwise_mul,
                           finite_difference_check, reduce_mean, scale, tensor_new)


class TestElementwise(unittest.TestCase):
    def test_add_values(self):
        a = tensor_new((3,), [1.0, 2.0, 3.0])
        b = tensor_new((3,), [4.0, 5.0, 6.0])
        self.assertEqual(elementwise_add(a, b).tolist(), [5.0, 7.0, 9.0])
        self.assertEqual((a + b).tolist(), [5.0, 7.0, 9.0])

    def test_no_broadcasting(self):
        with self.assertRaises(ShapeError):
            elementwise_add(tensor_new((3,), 1.0), tensor_new((1,), 1.0))

    def test_mean_of_empty_is_error(self):
        with self.assertRaises(ShapeError):
            reduce_mean(tensor_new((1, 0, 2, 2)))

    def test_operations_without_tape_do_not_track(self):
        a = tensor_new((2,), 1.0).as_leaf()
        self.assertFalse((a * 2.0).requires_grad)


class TestBackward(unittest.TestCase):
    def test_gradient_of_sum_is_ones(self):
        """d sum(a + b) / da = 1 en todas las posiciones."""
        a = tensor_new((2, 3), 0.5).as_leaf()
        b = tensor_new((2, 3), 2.0).as_leaf()
        with Tape() as tape:
            loss = scale(reduce_mean(elementwise_add(a, b)), 6.0)
        grads = backward(loss, tape)
        npt.assert_allclose(grads[a].data, np.ones((2, 3)), atol=1e-6)
        npt.assert_allclose(grads[b].data, np.ones((2, 3)), atol=1e-6)

    def test_fan_out_accumulates(self):
        """x alimenta dos consumidores: los gradientes se suman."""
        x = tensor_new((2,), [1.0, 3.0]).as_leaf()
        with Tape() as tape:
            loss = reduce_mean(elementwise_add(elementwise_mul(x, x), x))
        grads = backward(loss, tape)
        npt.assert_allclose(grads[x].data, (2 * np.array([1.0, 3.0]) + 1) / 2, rtol=1e-6)

    def test_unused_leaf_gets_zero(self):
        x = tensor_new((2,), 1.0).as_leaf()
        unused = tensor_new((3,), 1.0).as_leaf()
        with Tape() as tape:
            loss = reduce_mean(x)
        grads = backward(loss, tape)
        npt.assert_array_equal(grads[unused].data, np.zeros(3))
        self.assertNotIn(unused, grads)

    def test_tape_is_consumed(self):
        x = tensor_new((2,), 1.0).as_leaf()
        with Tape() as tape:
            loss = reduce_mean(x)
        backward(loss, tape)
        with self.assertRaises(GraphError):
            backward(loss, tape)
        with self.assertRaises(GraphError):
            with tape:
                pass

    def test_non_scalar_loss(self):
        x = tensor_new((2,), 1.0).as_leaf()
        with Tape() as tape:
            y = scale(x, 2.0)
        with self.assertRaises(GraphError):
            backward(y, tape)

    def test_loss_from_another_tape(self):
        x = tensor_new((2,), 1.0).as_leaf()
        with Tape():
            loss = reduce_mean(x)
        with Tape() as other:
            reduce_mean(scale(x, 2.0))
        with self.assertRaises(GraphError):
            backward(loss, other)

    def test_threads_use_independent_tapes(self):
        """Cada hilo registra en su propia cinta."""
        results: dict[int, float] = {}

        def work(k: int) -> None:
            x = tensor_new((4,), float(k)).as_leaf()
            with Tape() as tape:
                loss = reduce_mean(scale(x, float(k)))
            results[k] = float(backward(loss, tape)[x].data.sum())

        threads = [threading.Thread(target=work, args=(k,)) for k in (1, 2, 3)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        self.assertEqual(results, {1: 1.0, 2: 2.0, 3: 3.0})


class TestFiniteDifference(unittest.TestCase):
    def test_mean_relu_away_from_zero(self):
        with Config.use_precision("float64"):
            x = Tensor([[0.5, -1.2], [2.0, -0.3]])
            error = finite_difference_check(lambda t: reduce_mean(relu(t)), x, 1e-6)
        self.assertLess(error, 1e-6)

    def test_requires_float64(self):
        with self.assertRaises(GradientCheckError):
            finite_difference_check(reduce_mean, tensor_new((2,), 1.0))

    def test_eps_range(self):
        with Config.use_precision("float64"):
            x = tensor_new((2,), 1.0)
            with self.assertRaises(ValueError):
                finite_difference_check(reduce_mean, x, 1e-2)

    def test_kink_coordinates_are_skipped(self):
        """Con x = 0 la ReLU no es derivable: la coordenada se descarta."""
        with Config.use_precision("float64"):
            x = Tensor([0.0, 1.0])
            f = lambda t: reduce_mean(relu(t))  # noqa: E731
            self.assertGreater(finite_difference_check(f, x, 1e-5), 0.1)
            self.assertLess(finite_difference_check(f, x, 1e-5, kink_tolerance=1e-9), 1e-8)


if __name__ == "__main__":
    unittest.main()
