from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from ...errors import ShapeError
from ...tensor import Tensor
from ...tensor.autodiff.tape import apply_op
from ...tensor.core.tensor_core import Array
from ..params import BatchNormParams, Mode

logger = logging.getLogger(__name__)

_AXES = (0, 2, 3)


def _per_channel(v: Array) -> Array:
    return v[None, :, None, None]


def batch_norm(x: Tensor, p: BatchNormParams) -> Tensor:
    """
    Batch normalization por canal sobre (N, H, W).

    - ``Mode.TRAIN``: normaliza con la media y la varianza (sesgada) del lote y
      actualiza ``running ← (1 - momentum)·running + momentum·lote``.
    - ``Mode.EVAL``: usa sólo las estadísticas acumuladas.

    Diferenciable respecto a ``x``, ``gamma`` y ``beta`` en ambos modos.
    """
    if x.shape.rank != 4:
        raise ShapeError(f"batch_norm: se esperaba un tensor NCHW, forma {x.shape}.")
    c = x.data.shape[1]
    if c != p.channels:
        raise ShapeError(f"batch_norm: la entrada tiene {c} canales, se esperaban {p.channels}.")

    x_val = x.data
    gamma = p.gamma.data
    if p.mode is Mode.TRAIN:
        mean = x_val.mean(axis=_AXES)
        var = x_val.var(axis=_AXES)
        _update_running(p, mean, var)
    else:
        mean = p.running_mean.data.astype(x_val.dtype, copy=False)
        var = p.running_var.data.astype(x_val.dtype, copy=False)

    inv_std = 1.0 / np.sqrt(var + x_val.dtype.type(p.eps))
    x_hat = (x_val - _per_channel(mean)) * _per_channel(inv_std)
    value = _per_channel(gamma) * x_hat + _per_channel(p.beta.data)
    train = p.mode is Mode.TRAIN
    m = x_val.size // c

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        grad_gamma = (g * x_hat).sum(axis=_AXES)
        grad_beta = g.sum(axis=_AXES)
        d_hat = g * _per_channel(gamma)
        if train:
            sum_d = _per_channel(d_hat.sum(axis=_AXES))
            sum_dx = _per_channel((d_hat * x_hat).sum(axis=_AXES))
            grad_x = _per_channel(inv_std) / m * (m * d_hat - sum_d - x_hat * sum_dx)
        else:
            grad_x = d_hat * _per_channel(inv_std)
        return grad_x, grad_gamma, grad_beta

    return apply_op("batch_norm", (x, p.gamma, p.beta), value, _backward)


def _update_running(p: BatchNormParams, mean: Array, var: Array) -> None:
    mom = p.momentum
    dtype = p.running_mean.dtype
    new_mean = (1.0 - mom) * p.running_mean.data + mom * mean.astype(dtype)
    new_var = (1.0 - mom) * p.running_var.data + mom * var.astype(dtype)
    p.running_mean = Tensor._wrap(new_mean.astype(dtype, copy=False), False, "running_mean")
    p.running_var = Tensor._wrap(new_var.astype(dtype, copy=False), False, "running_var")
    logger.debug("running stats actualizadas (canales=%d)", p.channels)
