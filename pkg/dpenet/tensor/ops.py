"""
Operaciones elementales diferenciables sobre tensores de igual forma.

No hay broadcasting: ambos operandos deben tener exactamente la misma forma.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..errors import ShapeError
from .autodiff.tape import apply_op
from .core.tensor_core import Array, Tensor


def _validate_same_shape(a: Tensor, b: Tensor, op: str) -> None:
    if a.data.shape != b.data.shape:
        raise ShapeError(f"{op}: formas incompatibles {a.shape} y {b.shape}.")


def elementwise_add(a: Tensor, b: Tensor) -> Tensor:
    """c[i] = a[i] + b[i]; el gradiente pasa sin cambios a ambas entradas."""
    _validate_same_shape(a, b, "elementwise_add")

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return g, g

    return apply_op("add", (a, b), a.data + b.data, _backward)


def elementwise_mul(a: Tensor, b: Tensor) -> Tensor:
    """Producto de Hadamard."""
    _validate_same_shape(a, b, "elementwise_mul")
    a_val, b_val = a.data, b.data

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return g * b_val, g * a_val

    return apply_op("mul", (a, b), a_val * b_val, _backward)


def scale(a: Tensor, k: float) -> Tensor:
    """Multiplicación por una constante escalar."""
    factor = a.dtype.type(k)

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return (g * factor,)

    return apply_op("scale", (a,), np.asarray(a.data * factor), _backward)


def reduce_mean(a: Tensor) -> Tensor:
    """Media aritmética de todos los elementos (tensor de rango 0)."""
    if a.numel == 0:
        raise ShapeError("reduce_mean sobre un tensor vacío.")
    n = a.numel
    shape = a.data.shape

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        return (np.full(shape, g.reshape(()) / n, dtype=g.dtype),)

    return apply_op("mean", (a,), np.asarray(a.data.mean(), dtype=a.dtype), _backward)
