from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt

from ..._config import Config
from .tensor_core import Array


class SeededRng:
    """
    Generador determinista (PCG64 de numpy) a partir de una semilla de 64 bits.

    Misma semilla ⇒ misma secuencia en cualquier ejecución y plataforma.
    """
    __slots__ = ("seed", "_generator")

    def __init__(self, seed: int) -> None:
        if not 0 <= seed < 2**64:
            raise ValueError(f"La semilla debe estar en [0, 2**64): {seed}")
        self.seed = int(seed)
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    def derive(self, index: int) -> SeededRng:
        """Flujo independiente por muestra: semilla ⊕ índice."""
        return SeededRng(self.seed ^ int(index))

    def normal(self, shape: Sequence[int], std: float = 1.0,
               dtype: Optional[npt.DTypeLike] = None) -> Array:
        values = self._generator.standard_normal(tuple(shape)) * std
        return values.astype(dtype if dtype is not None else Config.dtype())

    def uniform(self, low: float = 0.0, high: float = 1.0,
                size: Optional[Sequence[int]] = None) -> Array:
        shape = tuple(size) if size is not None else ()
        return self._generator.uniform(low, high, shape)

    def scalar(self, low: float = 0.0, high: float = 1.0) -> float:
        return float(self._generator.uniform(low, high))

    def integer(self, low: int, high: int) -> int:
        """Entero en [low, high)."""
        return int(self._generator.integers(low, high))

    def permutation(self, n: int) -> list[int]:
        return [int(i) for i in self._generator.permutation(n)]

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed})"
