# loop.py
# --------------------------------------------------------------
# Bucle de entrenamiento con SGDM
# --------------------------------------------------------------
#  • Por época: barajado con semilla, lotes de batch_size (el último
#    lote parcial se conserva), forward en modo TRAIN, BCE, backward
#    y sgdm_step.
#  • Cada eval_every épocas: mDice / mIoU de validación en modo EVAL,
#    anotados en la última fila de la época.
#  • Una pérdida no finita aborta con DivergenceError.
# --------------------------------------------------------------
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Union

import pandas as pd

from .._config import Config
from ..config_file import ConfigEntry, coerce, parse_bool
from ..data import Purpose, SampleSource
from ..errors import ConfigError, DataError, DivergenceError, NonFiniteError
from ..network import Network, forward
from ..nn import Mode, bce_with_logits
from ..tensor import SeededRng, Tape, backward
from .evaluation import EvalReport, evaluate
from .sgdm import SgdmState, sgdm_step

logger = logging.getLogger(__name__)

LOG_COLUMNS = ["epoch", "step", "loss", "mdice_val", "miou_val"]
TRAIN_KEYS = ("epochs", "batch_size", "lr", "lr_override", "seed", "shuffle",
              "eval_every", "momentum", "threshold")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 40
    batch_size: int = 8
    lr: float = 1e-4
    lr_override: Optional[float] = None
    seed: int = 0
    shuffle: bool = True
    eval_every: int = 1
    momentum: float = field(default_factory=lambda: Config.sgdm_momentum)
    threshold: float = field(default_factory=lambda: Config.threshold)

    @property
    def effective_lr(self) -> float:
        return self.lr if self.lr_override is None else self.lr_override

    def validate(self) -> TrainConfig:
        if self.epochs < 1:
            raise ConfigError(f"epochs debe ser ≥ 1: {self.epochs}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size debe ser ≥ 1: {self.batch_size}")
        # lr = 0 se admite: actualización nula, útil como diagnóstico
        if not math.isfinite(self.effective_lr) or self.effective_lr < 0:
            raise ConfigError(f"lr debe ser finita y ≥ 0: {self.effective_lr}")
        if self.eval_every < 1:
            raise ConfigError(f"eval_every debe ser ≥ 1: {self.eval_every}")
        if not 0.0 <= self.momentum < 1.0:
            raise ConfigError(f"momentum debe estar en [0, 1): {self.momentum}")
        if not 0.0 < self.threshold < 1.0:
            raise ConfigError(f"threshold debe estar en (0, 1): {self.threshold}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed fuera de rango: {self.seed}")
        return self

    def with_overrides(self, **changes: Any) -> TrainConfig:
        return replace(self, **changes)

    @classmethod
    def from_entries(cls, entries: Mapping[str, ConfigEntry],
                     base: Optional[TrainConfig] = None) -> TrainConfig:
        converters: dict[str, Callable[[str], Any]] = {
            "epochs": int, "batch_size": int, "lr": float, "lr_override": float,
            "seed": int, "shuffle": parse_bool, "eval_every": int,
            "momentum": float, "threshold": float,
        }
        changes = {key: coerce(entries[key], conv) for key, conv in converters.items() if key in entries}
        return replace(base if base is not None else cls(), **changes)


# ---------------------------------------------------------------------------
# Registro ==================================================================
# ---------------------------------------------------------------------------
class TrainingLog:
    """Una fila por paso; las métricas sólo en la última fila de las épocas evaluadas."""

    def __init__(self) -> None:
        self._rows: list[dict[str, Any]] = []

    def add_step(self, epoch: int, step: int, loss: float) -> None:
        self._rows.append({"epoch": epoch, "step": step, "loss": loss,
                           "mdice_val": None, "miou_val": None})

    def add_metrics(self, report: EvalReport) -> None:
        self._rows[-1]["mdice_val"] = report.mdice
        self._rows[-1]["miou_val"] = report.miou

    @property
    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self._rows, columns=LOG_COLUMNS).astype(
            {"epoch": "int64", "step": "int64", "loss": "float64",
             "mdice_val": "float64", "miou_val": "float64"}
        )

    @property
    def losses(self) -> list[float]:
        return [float(r["loss"]) for r in self._rows]

    def epoch_losses(self) -> pd.Series:
        """Pérdida media de entrenamiento por época."""
        return self.frame.groupby("epoch")["loss"].mean()

    def __len__(self) -> int:
        return len(self._rows)

    def to_csv(self, path: Union[str, Path]) -> None:
        self.frame.to_csv(path, index=False, na_rep="", lineterminator="\n",
                          float_format="%.8g", encoding="utf-8")


# ---------------------------------------------------------------------------
# Entrenamiento =============================================================
# ---------------------------------------------------------------------------
def train_step(net: Network, data: SampleSource, batch_ids: list[str], state: SgdmState) -> float:
    images, masks = data.batch(batch_ids, Purpose.TRAIN)
    params = net.named_parameters()
    try:
        with Tape() as tape:
            loss = bce_with_logits(forward(net, images, Mode.TRAIN), masks)
        grads = backward(loss, tape)
        new_params = sgdm_step(params, {name: grads[p] for name, p in params.items()}, state)
    except NonFiniteError as exc:
        raise DivergenceError(f"El entrenamiento divergió: {exc}") from exc
    net.load_state(new_params)
    return loss.item()


def train_loop(net: Network, data: SampleSource, cfg: TrainConfig,
               on_epoch: Optional[Callable[[int, TrainingLog], None]] = None) -> TrainingLog:
    """
    Entrena ``net`` sobre ``data.split.train``.

    Sólo las muestras de entrenamiento se leen con propósito TRAIN; la
    validación se lee con propósito EVAL y nunca participa en gradientes.
    """
    cfg.validate()
    train_ids = list(data.split.train)
    if not train_ids:
        raise DataError("La partición de entrenamiento está vacía.")
    val_ids = list(data.split.validation)

    rng = SeededRng(cfg.seed)
    state = SgdmState.for_params(net.named_parameters(), cfg.effective_lr, cfg.momentum)
    log = TrainingLog()
    step = 0
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(len(train_ids)) if cfg.shuffle else list(range(len(train_ids)))
        ids = [train_ids[i] for i in order]
        for start in range(0, len(ids), cfg.batch_size):
            loss = train_step(net, data, ids[start:start + cfg.batch_size], state)
            step += 1
            log.add_step(epoch, step, loss)
            logger.debug("época %d paso %d pérdida %.6f", epoch, step, loss)

        if val_ids and epoch % cfg.eval_every == 0:
            report = evaluate(net, data, val_ids, cfg.threshold, cfg.batch_size)
            log.add_metrics(report)
        logger.info("época %d/%d: pérdida media %.6f", epoch, cfg.epochs,
                    float(log.epoch_losses().iloc[-1]))
        if on_epoch is not None:
            on_epoch(epoch, log)
    return log
