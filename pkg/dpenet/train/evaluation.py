# evaluation.py
# --------------------------------------------------------------
# Evaluación de una red sobre una lista de muestras
# --------------------------------------------------------------
#  • forward en modo EVAL -> sigmoide -> confusión por imagen.
#  • mDice / mIoU / accuracy: medias por imagen (titular).
#  • pooled_dice / pooled_iou: sobre la confusión acumulada.
# --------------------------------------------------------------
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import pandas as pd

from ..data import Purpose, SampleSource
from ..errors import DataError, ShapeError
from ..metrics import (ConfusionCounts, aggregate_mean, confusion_from_masks, dice, iou,
                       pixel_accuracy, pooled_dice, pooled_iou)
from ..network import Network, forward
from ..nn import Mode, sigmoid
from ..printing import Printable, RecordValue, ReportFormatter
from ..tensor import Tensor

logger = logging.getLogger(__name__)

ROW_COLUMNS = ["id", "tp", "fp", "fn", "tn", "dice", "iou", "accuracy"]


@dataclass(frozen=True, eq=False)
class EvalReport(Printable):
    mdice: float
    miou: float
    accuracy: float
    pooled_dice: float
    pooled_iou: float
    rows: pd.DataFrame

    @property
    def n_images(self) -> int:
        return len(self.rows)

    def as_record(self) -> Mapping[str, RecordValue]:
        return {"mdice": self.mdice, "miou": self.miou,
                "accuracy": self.accuracy, "n_images": self.n_images}

    def __str__(self) -> str:
        return ReportFormatter.eval_report_str(self)


def report_from_counts(ids: Sequence[str], counts: Sequence[ConfusionCounts]) -> EvalReport:
    if not counts:
        raise DataError("No hay imágenes que evaluar.")
    if len(ids) != len(counts):
        raise ShapeError(f"{len(ids)} identificadores para {len(counts)} confusiones.")
    rows = pd.DataFrame(
        [(sid, c.tp, c.fp, c.fn, c.tn, dice(c), iou(c), pixel_accuracy(c))
         for sid, c in zip(ids, counts)],
        columns=ROW_COLUMNS,
    )
    return EvalReport(
        mdice=aggregate_mean(rows["dice"].tolist()),
        miou=aggregate_mean(rows["iou"].tolist()),
        accuracy=aggregate_mean(rows["accuracy"].tolist()),
        pooled_dice=pooled_dice(counts),
        pooled_iou=pooled_iou(counts),
        rows=rows,
    )


def evaluate_predictions(ids: Sequence[str], pred_prob: Tensor, truth: Tensor,
                         threshold: Optional[float] = None) -> EvalReport:
    """Evalúa probabilidades ya calculadas (N,1,H,W) frente a máscaras (N,1,H,W)."""
    return report_from_counts(ids, confusion_from_masks(pred_prob, truth, threshold))


def predict(net: Network, images: Tensor) -> Tensor:
    """Probabilidades por píxel en modo EVAL."""
    return sigmoid(forward(net, images, Mode.EVAL))


def evaluate(net: Network, data: SampleSource, ids: Sequence[str],
             threshold: Optional[float] = None, batch_size: int = 8) -> EvalReport:
    """Inferencia por lotes sobre ``ids`` y agregación de métricas."""
    if not ids:
        raise DataError("La lista de evaluación está vacía.")
    counts: list[ConfusionCounts] = []
    for start in range(0, len(ids), batch_size):
        chunk = ids[start:start + batch_size]
        images, masks = data.batch(chunk, Purpose.EVAL)
        counts += confusion_from_masks(predict(net, images), masks, threshold)
    report = report_from_counts(ids, counts)
    logger.info("evaluación sobre %d imágenes: %s", report.n_images, report.record_line())
    return report
