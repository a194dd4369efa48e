from dpenet.tensor.core.tensor_core import (Array, Fill, Shape, Tensor,
                                            tensor_new, zeros, ones, stack)
from dpenet.tensor.core.rng import SeededRng

__all__ = [
    'Array',
    'Fill',
    'Shape',
    'Tensor',
    'SeededRng',

    'tensor_new',
    'zeros',
    'ones',
    'stack',
]
