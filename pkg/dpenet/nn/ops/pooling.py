from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ...errors import ShapeError
from ...tensor import Tensor
from ...tensor.autodiff.tape import apply_op
from ...tensor.core.tensor_core import Array


def max_pool2(x: Tensor) -> Tensor:
    """
    Max pooling 2x2 con stride 2.

    En caso de empate gana la primera posición de la ventana en orden de filas;
    el gradiente se enruta sólo a esa posición.
    """
    if x.shape.rank != 4:
        raise ShapeError(f"max_pool2: se esperaba un tensor NCHW, forma {x.shape}.")
    n, c, h, w = x.data.shape
    if h % 2 or w % 2:
        raise ShapeError(f"max_pool2: H y W deben ser pares, forma {x.shape}.")
    h2, w2 = h // 2, w // 2

    # (N,C,H/2,W/2,4) con la ventana en orden de filas: (0,0) (0,1) (1,0) (1,1)
    windows = x.data.reshape(n, c, h2, 2, w2, 2).transpose(0, 1, 2, 4, 3, 5).reshape(n, c, h2, w2, 4)
    arg = windows.argmax(axis=-1)[..., None]
    value = np.take_along_axis(windows, arg, axis=-1)[..., 0]

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        routed = np.zeros((n, c, h2, w2, 4), dtype=g.dtype)
        np.put_along_axis(routed, arg, g[..., None], axis=-1)
        return (routed.reshape(n, c, h2, w2, 2, 2).transpose(0, 1, 2, 4, 3, 5).reshape(n, c, h, w),)

    return apply_op("max_pool2", (x,), np.ascontiguousarray(value), _backward)


def concat_channels(a: Tensor, b: Tensor) -> Tensor:
    """Concatena por el eje de canales, primero los de ``a``."""
    if a.shape.rank != 4 or b.shape.rank != 4:
        raise ShapeError(f"concat_channels: se esperaban tensores NCHW, formas {a.shape} y {b.shape}.")
    na, ca, ha, wa = a.data.shape
    nb, _, hb, wb = b.data.shape
    if (na, ha, wa) != (nb, hb, wb):
        raise ShapeError(f"concat_channels: N, H, W no coinciden: {a.shape} y {b.shape}.")

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return g[:, :ca], g[:, ca:]

    value = np.concatenate([a.data, b.data], axis=1)
    return apply_op("concat_channels", (a, b), value, _backward)
