"""
Medidas de evaluación a partir de :class:`ConfusionCounts`.

Convención: si tp = fp = fn = 0 (ambas máscaras vacías) Dice e IoU valen 1.0.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

from ..errors import DataError
from .confusion import ConfusionCounts


def dice(c: ConfusionCounts) -> float:
    """2·TP / (2·TP + FN + FP)."""
    denom = 2 * c.tp + c.fn + c.fp
    return 1.0 if denom == 0 else 2 * c.tp / denom


def iou(c: ConfusionCounts) -> float:
    """TP / (TP + FP + FN), índice de Jaccard."""
    denom = c.tp + c.fp + c.fn
    return 1.0 if denom == 0 else c.tp / denom


def pixel_accuracy(c: ConfusionCounts) -> float:
    if c.total == 0:
        raise DataError("Precisión de píxel sobre una confusión vacía.")
    return (c.tp + c.tn) / c.total


def aggregate_mean(values: Sequence[float]) -> float:
    """Media aritmética de las puntuaciones por imagen (mDice, mIoU)."""
    if len(values) == 0:
        raise DataError("No hay puntuaciones que promediar.")
    return math.fsum(values) / len(values)


def pool(counts: Iterable[ConfusionCounts]) -> ConfusionCounts:
    return sum(counts, ConfusionCounts())


def pooled_dice(counts: Iterable[ConfusionCounts]) -> float:
    """Dice global sobre la confusión acumulada de todas las imágenes."""
    return dice(pool(counts))


def pooled_iou(counts: Iterable[ConfusionCounts]) -> float:
    return iou(pool(counts))
