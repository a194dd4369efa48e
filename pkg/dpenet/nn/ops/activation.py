from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ...tensor import Tensor
from ...tensor.autodiff.tape import apply_op
from ...tensor.core.tensor_core import Array


def relu(x: Tensor) -> Tensor:
    """y = max(x, 0); subgradiente 0 en x = 0."""
    x_val = x.data
    mask = x_val > 0

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return (g * mask,)

    return apply_op("relu", (x,), np.where(mask, x_val, x_val.dtype.type(0)), _backward)


def _sigmoid(z: Array) -> Array:
    # forma con tanh: estable para |z| grande en ambos signos
    half = z.dtype.type(0.5)
    return half * (1 + np.tanh(half * z))


def sigmoid(x: Tensor) -> Tensor:
    """y = 1 / (1 + exp(-x)); la derivada es y·(1 - y)."""
    y = _sigmoid(x.data)

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return (g * y * (1 - y),)

    return apply_op("sigmoid", (x,), y, _backward)
