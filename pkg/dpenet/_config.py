# Ajustes globales del proceso (precisión, constantes de BN, umbral...)
from __future__ import annotations

from contextlib import contextmanager
from typing import ClassVar, Iterator, Literal

import numpy as np

Precision = Literal["float32", "float64"]


class Config:
    """
    Valores por defecto compartidos por toda la librería.

    La precisión escalar es ``float32`` para entrenamiento e inferencia; el modo
    ``float64`` sólo se usa en las comprobaciones de gradiente.
    """
    precision: ClassVar[Precision] = "float32"

    bn_eps: ClassVar[float] = 1e-5
    bn_momentum: ClassVar[float] = 0.1
    sgdm_momentum: ClassVar[float] = 0.9
    threshold: ClassVar[float] = 0.5

    @classmethod
    def dtype(cls) -> np.dtype[np.floating]:  # type: ignore[type-arg]
        return np.dtype(cls.precision)

    @classmethod
    def set_precision(cls, precision: Precision) -> None:
        if precision not in ("float32", "float64"):
            raise ValueError(f"{precision} no es una precisión válida. Usa 'float32' o 'float64'")
        cls.precision = precision

    @classmethod
    @contextmanager
    def use_precision(cls, precision: Precision) -> Iterator[None]:
        """Cambia la precisión dentro de un bloque ``with`` y la restaura al salir."""
        previous = cls.precision
        cls.set_precision(precision)
        try:
            yield
        finally:
            cls.precision = previous
