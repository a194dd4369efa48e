from dpenet.tensor.core import (Array, Shape, Tensor, SeededRng,
                                tensor_new, zeros, ones, stack)
from dpenet.tensor.autodiff import (AutodiffGraph, Gradients, Tape,
                                    backward, finite_difference_check)
from dpenet.tensor.ops import elementwise_add, elementwise_mul, scale, reduce_mean
from dpenet.tensor.serialization import encode_tensor, decode_tensor, write_tensor, read_tensor

__all__ = [
    'Array',
    'Shape',
    'Tensor',
    'SeededRng',
    'tensor_new',
    'zeros',
    'ones',
    'stack',

    'AutodiffGraph',
    'Gradients',
    'Tape',
    'backward',
    'finite_difference_check',

    'elementwise_add',
    'elementwise_mul',
    'scale',
    'reduce_mean',

    'encode_tensor',
    'decode_tensor',
    'write_tensor',
    'read_tensor',
]
