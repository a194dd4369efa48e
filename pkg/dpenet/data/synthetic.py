# synthetic.py
# --------------------------------------------------------------
# Dataset sintético de "pólipos"
# --------------------------------------------------------------
#  • Fondo: ruido de valor (retícula sembrada + interpolación bilineal)
#    en una banda de tonos rojizos.
#  • Pólipo: una super-elipse rellena (centro, semiejes en
#    [0.1, 0.3]·min(H,W), rotación, exponente en [2, 4]) sombreada como
#    una cúpula: ya en el borde es más clara que el fondo y se aclara
#    hacia el centro, con un grano fino de textura.
#  • La máscara es exactamente el interior de la super-elipse; las formas
#    con menos del 1 % o más del 30 % de primer plano se vuelven a sortear.
#  • Cada muestra usa su propio flujo: semilla ⊕ índice.
# --------------------------------------------------------------
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DataError
from ..tensor import SeededRng, Tensor
from ..tensor.core.tensor_core import Array
from .resize import bilinear_array

logger = logging.getLogger(__name__)

MIN_HW = 16
FOREGROUND_RANGE = (0.01, 0.30)
MAX_ATTEMPTS = 100

# RGB del pólipo en el borde y en la cima de la cúpula
POLYP_EDGE = np.array([0.80, 0.42, 0.34])
POLYP_TOP = np.array([0.98, 0.80, 0.72])


@dataclass(frozen=True, eq=False)
class Sample:
    """Imagen (3,H,W) en [0,1] y máscara binaria (1,H,W)."""
    image: Tensor
    mask: Tensor
    id: str

    def __post_init__(self) -> None:
        if self.image.shape.rank != 3 or self.image.data.shape[0] != 3:
            raise DataError(f"{self.id}: la imagen debe ser (3,H,W), es {self.image.shape}.")
        if self.mask.data.shape != (1,) + self.image.data.shape[1:]:
            raise DataError(f"{self.id}: máscara {self.mask.shape} e imagen {self.image.shape} no casan.")
        if not np.isin(self.mask.data, (0.0, 1.0)).all():
            raise DataError(f"{self.id}: la máscara no es binaria.")

    @property
    def hw(self) -> tuple[int, int]:
        return int(self.image.data.shape[1]), int(self.image.data.shape[2])


def sample_id(index: int) -> str:
    return f"sample_{index:04d}"


def _value_noise(rng: SeededRng, hw: tuple[int, int], cell: int) -> Array:
    h, w = hw
    lattice = rng.uniform(0.0, 1.0, (h // cell + 2, w // cell + 2))
    return bilinear_array(lattice, hw)


def _superellipse(rng: SeededRng, hw: tuple[int, int]) -> tuple[Array, float]:
    """Nivel |u/a|^p + |v/b|^p de la super-elipse y su exponente p; el interior es nivel ≤ 1."""
    h, w = hw
    m = min(h, w)
    cy = rng.scalar(0.2 * h, 0.8 * h)
    cx = rng.scalar(0.2 * w, 0.8 * w)
    a = rng.scalar(0.1, 0.3) * m
    b = rng.scalar(0.1, 0.3) * m
    theta = rng.scalar(0.0, math.pi)
    p = rng.scalar(2.0, 4.0)

    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    dy, dx = yy + 0.5 - cy, xx + 0.5 - cx
    u = dx * math.cos(theta) + dy * math.sin(theta)
    v = -dx * math.sin(theta) + dy * math.cos(theta)
    level: Array = np.abs(u / a) ** p + np.abs(v / b) ** p
    return level, p


def _dome(level: Array, p: float) -> Array:
    """Altura de la cúpula: 0 en el borde, 1 en el centro, empinada junto al borde."""
    radial = np.minimum(level, 1.0) ** (1.0 / p)
    height: Array = np.sqrt(1.0 - radial ** 2)
    return height


def generate_sample(rng: SeededRng, hw: tuple[int, int], sid: str) -> Sample:
    h, w = hw
    total = h * w
    for attempt in range(MAX_ATTEMPTS):
        level, p = _superellipse(rng, hw)
        inside = level <= 1.0
        fraction = float(inside.sum()) / total
        if FOREGROUND_RANGE[0] <= fraction <= FOREGROUND_RANGE[1]:
            break
        logger.debug("%s: fracción %.3f fuera de rango, intento %d", sid, fraction, attempt + 1)
    else:
        raise DataError(f"{sid}: no se obtuvo un pólipo válido en {MAX_ATTEMPTS} intentos ({h}x{w}).")

    base = 0.7 * _value_noise(rng, hw, max(4, min(h, w) // 4)) + 0.3 * _value_noise(rng, hw, 4)
    background = np.stack([0.45 + 0.30 * base, 0.15 + 0.15 * base, 0.12 + 0.10 * base])

    # borde ya más claro que cualquier fondo; la cúpula aclara hacia el centro
    dome = _dome(level, p)
    texture = 0.03 * rng.uniform(-1.0, 1.0, (h, w))
    polyp = POLYP_EDGE[:, None, None] + (POLYP_TOP - POLYP_EDGE)[:, None, None] * dome + texture

    image = np.clip(np.where(inside[None], polyp, background), 0.0, 1.0)
    return Sample(Tensor(image), Tensor(inside[None].astype(np.float64)), sid)


def generate_synthetic_dataset(n: int, hw: tuple[int, int], seed: int) -> list[Sample]:
    """Genera ``n`` muestras; el resultado es función pura de (n, hw, seed)."""
    h, w = hw
    if n < 1:
        raise DataError(f"Se necesita al menos una muestra, n={n}.")
    if h < MIN_HW or w < MIN_HW:
        raise DataError(f"Dimensiones degeneradas {h}x{w} (mínimo {MIN_HW}x{MIN_HW}).")
    root = SeededRng(seed)
    samples = [generate_sample(root.derive(i), (h, w), sample_id(i)) for i in range(n)]
    logger.info("generadas %d muestras sintéticas %dx%d (semilla %d)", n, h, w, seed)
    return samples
