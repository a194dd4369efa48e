# params.py
# --------------------------------------------------------------
# Contenedores de parámetros: convolución y batch normalization
# --------------------------------------------------------------
#  • Los tensores son inmutables: el optimizador sustituye referencias
#    (load_state), nunca escribe en los buffers.
#  • ParameterContainer da nombres jerárquicos "a.b.weight" a todo
#    parámetro entrenable y a los buffers (estadísticas de BN).
# --------------------------------------------------------------
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Iterator, Mapping, Optional, Union

import numpy as np

from .._config import Config
from ..errors import ShapeError
from ..tensor import SeededRng, Tensor, ones, zeros


class Mode(Enum):
    TRAIN = 'train'
    EVAL = 'eval'


Slot = Union[Tensor, "ParameterContainer"]


class ParameterContainer(ABC):
    """
    Interfaz común de bloques y capas con parámetros.

    Las subclases enumeran sus ranuras con ``_slots``: cada una es un ``Tensor``
    (atributo) o un contenedor hijo. Los nombres en ``_buffers`` no se entrenan.
    """
    _buffers: ClassVar[frozenset[str]] = frozenset()

    @abstractmethod
    def _slots(self) -> Iterator[tuple[str, Slot]]: ...

    def _walk(self, prefix: str = "") -> Iterator[tuple[str, Tensor, bool]]:
        for name, slot in self._slots():
            full = f"{prefix}{name}"
            if isinstance(slot, ParameterContainer):
                yield from slot._walk(full + ".")
            else:
                yield full, slot, name not in self._buffers

    def named_parameters(self, prefix: str = "") -> dict[str, Tensor]:
        """Parámetros entrenables en orden de declaración."""
        return {name: t for name, t, trainable in self._walk(prefix) if trainable}

    def named_buffers(self, prefix: str = "") -> dict[str, Tensor]:
        return {name: t for name, t, trainable in self._walk(prefix) if not trainable}

    def state(self, prefix: str = "") -> dict[str, Tensor]:
        """Parámetros y buffers, en orden de declaración."""
        return {name: t for name, t, _ in self._walk(prefix)}

    def parameter_count(self) -> int:
        return sum(t.numel for t in self.named_parameters().values())

    def load_state(self, values: Mapping[str, Tensor], prefix: str = "") -> None:
        """
        Sustituye los tensores cuyos nombres aparecen en ``values``.

        Las hojas entrenables se marcan ``requires_grad``; una forma distinta
        es un ``ShapeError`` que nombra el parámetro.
        """
        for name, slot in list(self._slots()):
            full = f"{prefix}{name}"
            if isinstance(slot, ParameterContainer):
                slot.load_state(values, full + ".")
                continue
            if full not in values:
                continue
            new = values[full]
            if new.data.shape != slot.data.shape:
                raise ShapeError(
                    f"Parámetro '{full}': forma {new.shape} incompatible con {slot.shape}."
                )
            trainable = name not in self._buffers
            self._assign(name, new.as_leaf(trainable) if new.requires_grad != trainable else new)

    def _assign(self, name: str, tensor: Tensor) -> None:
        setattr(self, name, tensor)

    def set_mode(self, mode: Mode) -> None:
        for _, slot in self._slots():
            if isinstance(slot, ParameterContainer):
                slot.set_mode(mode)


# ---------------------------------------------------------------------------
# Convolución ===============================================================
# ---------------------------------------------------------------------------
@dataclass(eq=False)
class ConvParams(ParameterContainer):
    """
    Pesos de una convolución.

    - estándar: ``weight`` (out_ch, in_ch, k, k) con k ∈ {1, 3}, stride 1,
      padding "same".
    - traspuesta: ``weight`` (in_ch, out_ch, 2, 2), stride 2, sin padding;
      el mismo tensor sirve a la convolución stride 2 adjunta.
    """
    weight: Tensor
    bias: Tensor
    transposed: bool = False

    def __post_init__(self) -> None:
        if self.weight.shape.rank != 4:
            raise ShapeError(f"El peso debe tener rango 4, tiene forma {self.weight.shape}.")
        k_h, k_w = self.weight.data.shape[2:]
        if k_h != k_w:
            raise ShapeError(f"Sólo se admiten kernels cuadrados: {k_h}x{k_w}.")
        allowed = (2,) if self.transposed else (1, 3)
        if k_h not in allowed:
            raise ShapeError(f"Kernel {k_h}x{k_w} no soportado (permitidos: {allowed}).")
        if self.bias.data.shape != (self.out_ch,):
            raise ShapeError(f"El sesgo debe tener forma ({self.out_ch},), tiene {self.bias.shape}.")

    @property
    def in_ch(self) -> int:
        axis = 0 if self.transposed else 1
        return int(self.weight.data.shape[axis])

    @property
    def out_ch(self) -> int:
        axis = 1 if self.transposed else 0
        return int(self.weight.data.shape[axis])

    @property
    def kernel(self) -> int:
        return int(self.weight.data.shape[2])

    @property
    def stride(self) -> int:
        return 2 if self.transposed else 1

    @property
    def padding(self) -> str:
        return "none" if self.transposed else "same"

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "weight", self.weight
        yield "bias", self.bias

    @classmethod
    def init(cls, in_ch: int, out_ch: int, kernel: int, rng: SeededRng,
             transposed: bool = False) -> ConvParams:
        """
        Inicialización tipo Kaiming: normal con std = sqrt(2 / fan_in), sesgo nulo.

        En la traspuesta (k = stride = 2) cada píxel de salida recibe
        exactamente ``in_ch`` contribuciones, así que fan_in = in_ch.
        """
        if in_ch < 1 or out_ch < 1:
            raise ShapeError(f"Canales inválidos: {in_ch} -> {out_ch}.")
        if transposed:
            shape = (in_ch, out_ch, kernel, kernel)
            fan_in = in_ch
        else:
            shape = (out_ch, in_ch, kernel, kernel)
            fan_in = in_ch * kernel * kernel
        weight = Tensor(rng.normal(shape, math.sqrt(2.0 / fan_in)), requires_grad=True)
        bias = zeros((out_ch,)).as_leaf()
        return cls(weight, bias, transposed)


# ---------------------------------------------------------------------------
# Batch normalization ========================================================
# ---------------------------------------------------------------------------
@dataclass(eq=False)
class BatchNormParams(ParameterContainer):
    """
    Parámetros por canal de batch normalization.

    En modo ``EVAL`` sólo se usan las estadísticas acumuladas.
    """
    gamma: Tensor
    beta: Tensor
    running_mean: Tensor
    running_var: Tensor
    momentum: float = field(default_factory=lambda: Config.bn_momentum)
    eps: float = field(default_factory=lambda: Config.bn_eps)
    mode: Mode = Mode.TRAIN

    _buffers: ClassVar[frozenset[str]] = frozenset({"running_mean", "running_var"})

    def __post_init__(self) -> None:
        c = self.channels
        for name in ("beta", "running_mean", "running_var"):
            if getattr(self, name).data.shape != (c,):
                raise ShapeError(f"'{name}' debe tener forma ({c},).")
        if not 0.0 < self.momentum < 1.0:
            raise ValueError(f"momentum debe estar en (0, 1): {self.momentum}")
        if self.eps <= 0.0:
            raise ValueError(f"eps debe ser positivo: {self.eps}")
        if np.any(self.running_var.data < 0):
            raise ValueError("running_var debe ser no negativa.")

    @property
    def channels(self) -> int:
        return int(self.gamma.data.shape[0])

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "gamma", self.gamma
        yield "beta", self.beta
        yield "running_mean", self.running_mean
        yield "running_var", self.running_var

    def set_mode(self, mode: Mode) -> None:
        self.mode = mode

    @classmethod
    def init(cls, channels: int, momentum: Optional[float] = None,
             eps: Optional[float] = None) -> BatchNormParams:
        """gamma = 1, beta = 0, media acumulada 0 y varianza acumulada 1."""
        return cls(
            gamma=ones((channels,)).as_leaf(),
            beta=zeros((channels,)).as_leaf(),
            running_mean=zeros((channels,)),
            running_var=ones((channels,)),
            momentum=Config.bn_momentum if momentum is None else momentum,
            eps=Config.bn_eps if eps is None else eps,
        )
