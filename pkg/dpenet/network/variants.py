"""
Registro de variantes de la ablación.

Cada fila fija la variante de red y, opcionalmente, una tasa de aprendizaje
propia; el resto de la configuración es común a todas las filas.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import ConfigError
from .config import NetConfig, NetVariant


@dataclass(frozen=True, slots=True)
class AblationVariant:
    name: str
    variant: NetVariant
    lr_override: Optional[float] = None
    description: str = ""

    def net_config(self, base: NetConfig) -> NetConfig:
        return base.with_overrides(variant=self.variant)

    def learning_rate(self, base_lr: float) -> float:
        return self.lr_override if self.lr_override is not None else base_lr


ABLATION_VARIANTS: tuple[AblationVariant, ...] = (
    AblationVariant("Network1", NetVariant.DUAL_ONLY, None, "sólo bloques de convolución dual"),
    AblationVariant("Network2", NetVariant.SINGLE_ONLY, None, "sólo bloques de convolución simple"),
    AblationVariant("Network3", NetVariant.BOTH, 1e-3, "ambas ramas con LR 1e-3"),
    AblationVariant("DPE-Net", NetVariant.BOTH, None, "ambas ramas, LR base"),
)


def get_variant(name: str) -> AblationVariant:
    for item in ABLATION_VARIANTS:
        if item.name == name:
            return item
    raise ConfigError(f"Variante de ablación '{name}' desconocida.")
