from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ...errors import DataError, ShapeError
from ...tensor import Tensor
from ...tensor.autodiff.tape import apply_op
from ...tensor.core.tensor_core import Array
from .activation import _sigmoid


def bce_with_logits(logits: Tensor, targets: Tensor) -> Tensor:
    """
    Entropía cruzada binaria media sobre todos los píxeles, a partir de logits:

        max(z, 0) - z·t + log(1 + exp(-|z|))

    Sólo es diferenciable respecto a ``logits``.
    """
    if logits.data.shape != targets.data.shape:
        raise ShapeError(f"bce_with_logits: formas {logits.shape} y {targets.shape} no coinciden.")
    t = targets.data.astype(logits.dtype, copy=False)
    if t.size and (t.min() < 0 or t.max() > 1):
        raise DataError("bce_with_logits: los objetivos deben estar en [0, 1].")

    z = logits.data
    n = z.size
    per_pixel = np.maximum(z, 0) - z * t + np.log1p(np.exp(-np.abs(z)))
    value = np.asarray(per_pixel.mean(), dtype=z.dtype)

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return (g.reshape(()) * (_sigmoid(z) - t) / n, None)

    return apply_op("bce_with_logits", (logits, targets), value, _backward)
