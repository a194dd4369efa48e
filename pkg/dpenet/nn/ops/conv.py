# conv.py
# --------------------------------------------------------------
# Convoluciones NCHW sobre numpy (im2col con sliding_window_view)
# --------------------------------------------------------------
#  • conv2d            : kernel 1x1 / 3x3, stride 1, padding "same".
#  • conv_transpose2d  : kernel 2x2, stride 2 (H, W -> 2H, 2W).
#  • conv2d_stride2    : kernel 2x2, stride 2 (2H, 2W -> H, W), sin sesgo;
#                        adjunta lineal de conv_transpose2d con el mismo kernel.
# --------------------------------------------------------------
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ...errors import ShapeError
from ...tensor import Tensor
from ...tensor.autodiff.tape import apply_op
from ...tensor.core.tensor_core import Array
from ..params import ConvParams


def _require_nchw(x: Tensor, op: str) -> tuple[int, int, int, int]:
    if x.shape.rank != 4:
        raise ShapeError(f"{op}: se esperaba un tensor NCHW, forma {x.shape}.")
    n, c, h, w = x.data.shape
    return n, c, h, w


def _windows(x: Array, k: int) -> Array:
    """Ventanas k x k con padding "same": (N, C, H, W, k, k)."""
    p = k // 2
    if p:
        x = np.pad(x, ((0, 0), (0, 0), (p, p), (p, p)))
    return sliding_window_view(x, (k, k), axis=(2, 3))


def _correlate(x: Array, weight: Array) -> Array:
    """Correlación "same" de x (N,C,H,W) con weight (O,C,k,k) -> (N,O,H,W)."""
    out = np.tensordot(_windows(x, weight.shape[2]), weight, axes=([1, 4, 5], [1, 2, 3]))
    return np.ascontiguousarray(out.transpose(0, 3, 1, 2))


# ---------------------------------------------------------------------------
# Convolución estándar =======================================================
# ---------------------------------------------------------------------------
def conv2d(x: Tensor, p: ConvParams) -> Tensor:
    """
    y[n,o,h,w] = bias[o] + Σ_{c,i,j} w[o,c,i,j] · x_pad[n,c,h+i,w+j]

    Diferenciable respecto a ``x``, ``p.weight`` y ``p.bias``.
    """
    if p.transposed:
        raise ShapeError("conv2d: los parámetros son de una convolución traspuesta.")
    _, c, _, _ = _require_nchw(x, "conv2d")
    if c != p.in_ch:
        raise ShapeError(f"conv2d: la entrada tiene {c} canales, se esperaban {p.in_ch}.")

    x_val, w_val, b_val = x.data, p.weight.data, p.bias.data
    k = p.kernel
    value = _correlate(x_val, w_val) + b_val[None, :, None, None]

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        grad_w = np.tensordot(g, _windows(x_val, k), axes=([0, 2, 3], [0, 2, 3]))
        grad_b = g.sum(axis=(0, 2, 3))
        # Convolución completa del gradiente con el kernel volteado y traspuesto.
        flipped = np.ascontiguousarray(w_val[:, :, ::-1, ::-1].transpose(1, 0, 2, 3))
        grad_x = _correlate(g, flipped)
        return grad_x, grad_w, grad_b

    return apply_op("conv2d", (x, p.weight, p.bias), value, _backward)


# ---------------------------------------------------------------------------
# Kernel 2x2 / stride 2 ======================================================
# ---------------------------------------------------------------------------
def _upsample_k2(x: Array, weight: Array) -> Array:
    """(N,I,H,W) con weight (I,O,2,2) -> (N,O,2H,2W)."""
    n, _, h, w = x.shape
    o = weight.shape[1]
    taps = np.tensordot(x, weight, axes=([1], [0]))          # (N,H,W,O,2,2)
    return np.ascontiguousarray(taps.transpose(0, 3, 1, 4, 2, 5).reshape(n, o, 2 * h, 2 * w))


def _blocks_k2(y: Array) -> Array:
    """(N,O,2H,2W) -> (N,O,H,2,W,2)."""
    n, o, h2, w2 = y.shape
    return y.reshape(n, o, h2 // 2, 2, w2 // 2, 2)


def _downsample_k2(y: Array, weight: Array) -> Array:
    """(N,O,2H,2W) con weight (I,O,2,2) -> (N,I,H,W)."""
    out = np.tensordot(_blocks_k2(y), weight, axes=([1, 3, 5], [1, 2, 3]))  # (N,H,W,I)
    return np.ascontiguousarray(out.transpose(0, 3, 1, 2))


def conv_transpose2d(x: Tensor, p: ConvParams) -> Tensor:
    """
    Convolución traspuesta kernel 2, stride 2: cada píxel de entrada se
    reparte en un bloque 2x2 de la salida, que mide exactamente 2H x 2W.
    """
    if not p.transposed:
        raise ShapeError("conv_transpose2d: se requieren parámetros traspuestos (kernel 2x2).")
    _, c, _, _ = _require_nchw(x, "conv_transpose2d")
    if c != p.in_ch:
        raise ShapeError(f"conv_transpose2d: la entrada tiene {c} canales, se esperaban {p.in_ch}.")

    x_val, w_val, b_val = x.data, p.weight.data, p.bias.data
    value = _upsample_k2(x_val, w_val) + b_val[None, :, None, None]

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        grad_x = _downsample_k2(g, w_val)
        grad_w = np.tensordot(x_val, _blocks_k2(g), axes=([0, 2, 3], [0, 2, 4]))
        return grad_x, grad_w, g.sum(axis=(0, 2, 3))

    return apply_op("conv_transpose2d", (x, p.weight, p.bias), value, _backward)


def conv2d_stride2(x: Tensor, weight: Tensor) -> Tensor:
    """
    Convolución 2x2 con stride 2 y sin sesgo, usando un kernel en la disposición
    traspuesta (in_ch, out_ch, 2, 2): lleva ``out_ch`` canales a ``in_ch``.

    Para todo x, y: ⟨conv2d_stride2(x, W), y⟩ = ⟨x, conv_transpose2d(y, W)⟩
    cuando el sesgo de la traspuesta es nulo.
    """
    _, c, h, w = _require_nchw(x, "conv2d_stride2")
    if weight.shape.rank != 4 or weight.data.shape[2:] != (2, 2):
        raise ShapeError(f"conv2d_stride2: kernel {weight.shape} no es (I, O, 2, 2).")
    if c != weight.data.shape[1]:
        raise ShapeError(
            f"conv2d_stride2: la entrada tiene {c} canales, se esperaban {weight.data.shape[1]}."
        )
    if h % 2 or w % 2:
        raise ShapeError(f"conv2d_stride2: H y W deben ser pares, forma {x.shape}.")

    x_val, w_val = x.data, weight.data
    value = _downsample_k2(x_val, w_val)

    def _backward(g: Array) -> Sequence[Optional[Array]]:
        grad_x = _upsample_k2(g, w_val)
        grad_w = np.tensordot(g, _blocks_k2(x_val), axes=([0, 2, 3], [0, 2, 4]))
        return grad_x, grad_w

    return apply_op("conv2d_stride2", (x, weight), value, _backward)
