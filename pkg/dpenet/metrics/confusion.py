from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .._config import Config
from ..errors import ConfigError, DataError, ShapeError
from ..tensor import Tensor


@dataclass(frozen=True, slots=True)
class ConfusionCounts:
    """Totales TP / FP / FN / TN de una comparación binaria de máscaras."""
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ValueError(f"{name} debe ser un entero no negativo: {value}")
            object.__setattr__(self, name, int(value))

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def __add__(self, other: ConfusionCounts) -> ConfusionCounts:
        if not isinstance(other, ConfusionCounts):
            return NotImplemented
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp,
                               self.fn + other.fn, self.tn + other.tn)

    def swapped(self) -> ConfusionCounts:
        """Intercambia fp y fn (predicción y verdad invertidas)."""
        return ConfusionCounts(self.tp, self.fn, self.fp, self.tn)


def _counts(pred: np.ndarray, truth: np.ndarray) -> ConfusionCounts:  # type: ignore[type-arg]
    tp = int(np.count_nonzero(pred & truth))
    fp = int(np.count_nonzero(pred & ~truth))
    fn = int(np.count_nonzero(~pred & truth))
    return ConfusionCounts(tp, fp, fn, int(pred.size) - tp - fp - fn)


def check_threshold(threshold: Optional[float] = None) -> float:
    """Umbral de binarización efectivo; debe estar en (0, 1)."""
    value = Config.threshold if threshold is None else float(threshold)
    if not 0.0 < value < 1.0:
        raise ConfigError(f"El umbral debe estar en (0, 1): {value}")
    return value


def confusion_from_masks(pred_prob: Tensor, truth: Tensor,
                         threshold: Optional[float] = None) -> list[ConfusionCounts]:
    """
    Matriz de confusión por imagen.

    Un tensor de rango 4 se trata como lote (una entrada por imagen del eje N);
    con rango menor se devuelve una única entrada. ``pred = prob >= threshold``.
    """
    threshold = check_threshold(threshold)
    if pred_prob.data.shape != truth.data.shape:
        raise ShapeError(f"Formas distintas: predicción {pred_prob.shape}, verdad {truth.shape}.")
    truth_val = truth.data
    if not np.isin(truth_val, (0.0, 1.0)).all():
        raise DataError("La máscara de referencia no es binaria.")

    pred = pred_prob.data >= threshold
    positive = truth_val == 1.0
    if pred_prob.shape.rank == 4:
        return [_counts(pred[i], positive[i]) for i in range(pred.shape[0])]
    return [_counts(pred, positive)]
