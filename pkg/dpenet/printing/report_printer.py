from __future__ import annotations

from typing import TYPE_CHECKING, Mapping, Sequence

import pandas as pd

from .core import BasicPrinter
from .printable import RecordValue

if TYPE_CHECKING:
    from ..train.evaluation import EvalReport


class ReportFormatter(BasicPrinter):
    """Formato de informes de evaluación, líneas máquina y tablas de ablación."""

    @classmethod
    def format_value(cls, value: RecordValue) -> str:
        if isinstance(value, bool):
            return str(value).lower()
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            return f"{value:.{cls.precision}f}"
        return str(value)

    @classmethod
    def record_line(cls, record: Mapping[str, RecordValue]) -> str:
        """``mdice=0.912345 miou=0.850000 ...``"""
        return " ".join(f"{key}={cls.format_value(value)}" for key, value in record.items())

    @classmethod
    def eval_report_str(cls, report: EvalReport) -> str:
        width = max(len(k) for k in report.as_record())
        lines = ["Evaluación"]
        lines += [f"  {key:<{width}} : {cls.format_value(value)}"
                  for key, value in report.as_record().items()]
        lines.append(f"  {'pooled_dice':<{width}} : {cls.format_value(report.pooled_dice)}")
        lines.append(f"  {'pooled_iou':<{width}} : {cls.format_value(report.pooled_iou)}")
        return "\n".join(lines)

    @classmethod
    def table_str(cls, frame: pd.DataFrame, columns: Sequence[str] | None = None) -> str:
        """Tabla alineada de texto con los flotantes a la precisión activa."""
        shown = frame if columns is None else frame.loc[:, list(columns)]
        return shown.to_string(index=False, float_format=lambda v: f"{v:.{cls.precision}f}")

    @classmethod
    def ablation_table_str(cls, frame: pd.DataFrame) -> str:
        return cls.table_str(frame, ["variant", "mdice", "accuracy", "miou", "lr"])
