"""
Redimensionado de imágenes (bilineal) y máscaras (vecino más próximo).

Muestreo alineado a las esquinas: los píxeles de los bordes de entrada y salida
coinciden, la coordenada de origen de la salida i es i·(H_in - 1)/(H_out - 1).
"""
from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from ..tensor import Tensor
from ..tensor.core.tensor_core import Array


def _source_coords(n_in: int, n_out: int) -> Array:
    if n_out == 1:
        return np.zeros(1)
    return np.linspace(0.0, n_in - 1, n_out)


def _check(img: Tensor, out_hw: tuple[int, int]) -> tuple[int, int]:
    if img.shape.rank not in (3, 4):
        raise ShapeError(f"Se esperaba (C,H,W) o (N,C,H,W), forma {img.shape}.")
    h, w = int(out_hw[0]), int(out_hw[1])
    if h < 1 or w < 1:
        raise ShapeError(f"Dimensiones de salida inválidas: {h}x{w}.")
    return h, w


def bilinear_array(values: Array, out_hw: tuple[int, int]) -> Array:
    """Interpolación bilineal sobre los dos últimos ejes."""
    h_in, w_in = values.shape[-2:]
    ys = _source_coords(h_in, out_hw[0])
    xs = _source_coords(w_in, out_hw[1])
    y0 = np.floor(ys).astype(np.intp)
    x0 = np.floor(xs).astype(np.intp)
    y1 = np.minimum(y0 + 1, h_in - 1)
    x1 = np.minimum(x0 + 1, w_in - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    top = values[..., y0, :][..., x0] * (1 - fx) + values[..., y0, :][..., x1] * fx
    bottom = values[..., y1, :][..., x0] * (1 - fx) + values[..., y1, :][..., x1] * fx
    return top * (1 - fy) + bottom * fy


def resize_bilinear(img: Tensor, out_hw: tuple[int, int]) -> Tensor:
    h, w = _check(img, out_hw)
    if img.data.shape[-2:] == (h, w):
        return img
    return Tensor(bilinear_array(img.data.astype(np.float64), (h, w)), dtype=img.dtype)


def resize_nearest(mask: Tensor, out_hw: tuple[int, int]) -> Tensor:
    """Vecino más próximo (alineado a esquinas) y re-binarización en 0.5."""
    h, w = _check(mask, out_hw)
    h_in, w_in = mask.data.shape[-2:]
    ys = np.floor(_source_coords(h_in, h) + 0.5).astype(np.intp)
    xs = np.floor(_source_coords(w_in, w) + 0.5).astype(np.intp)
    picked = mask.data[..., ys, :][..., xs]
    return Tensor((picked >= 0.5).astype(mask.dtype), dtype=mask.dtype)
