# tensor_core.py
# --------------------------------------------------------------
# Núcleo de tensores densos NCHW
# --------------------------------------------------------------
#  • Shape valida extensiones y rango (≤ 4).
#  • Tensor envuelve un buffer numpy de sólo lectura: es un valor inmutable.
#  • Las operaciones diferenciables viven en ops.py / nn.ops y se registran
#    en la cinta activa (autodiff.tape); aquí sólo hay contenedores.
# --------------------------------------------------------------
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional, Sequence, TypeAlias, Union

import numpy as np
import numpy.typing as npt

from ..._config import Config
from ...errors import NonFiniteError, ShapeError

# ---------------------------------------------------------------------------
# 1.  Aliases ================================================================
# ---------------------------------------------------------------------------
Array: TypeAlias = npt.NDArray[np.floating[Any]]
Fill: TypeAlias = Union[int, float, Sequence[float], Array]

MAX_RANK = 4
_MAX_ELEMENTS = int(np.iinfo(np.intp).max)


# ---------------------------------------------------------------------------
# 2.  Shape ==================================================================
# ---------------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class Shape:
    """
    Extensiones ordenadas de un tensor (para imágenes: N, C, H, W).

    Toda extensión es ≥ 1, salvo el eje de canales de un tensor de rango 4, que
    admite 0 (tensor vacío, elemento neutro de la concatenación por canales).
    """
    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]) -> None:
        values = tuple(int(d) for d in dims)
        if len(values) > MAX_RANK:
            raise ShapeError(f"Rango {len(values)} no soportado (máximo {MAX_RANK}).")
        for axis, extent in enumerate(values):
            empty_channels = len(values) == 4 and axis == 1 and extent == 0
            if extent < 1 and not empty_channels:
                raise ShapeError(f"Extensión inválida {extent} en el eje {axis} de {values}.")
        if math.prod(values) > _MAX_ELEMENTS:
            raise ShapeError(f"La forma {values} desborda el índice de la plataforma.")
        object.__setattr__(self, "dims", values)

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def numel(self) -> int:
        return math.prod(self.dims)

    def __iter__(self) -> Iterator[int]:
        return iter(self.dims)

    def __getitem__(self, axis: int) -> int:
        return self.dims[axis]

    def __len__(self) -> int:
        return len(self.dims)

    def __str__(self) -> str:
        return "(" + ", ".join(str(d) for d in self.dims) + ")"


# ---------------------------------------------------------------------------
# 3.  Tensor =================================================================
# ---------------------------------------------------------------------------
def _check_finite(values: Array, origin: str) -> None:
    if values.size and not np.isfinite(values).all():
        raise NonFiniteError(f"Valores no finitos producidos por '{origin}'.")


class Tensor:
    """
    Tensor denso en orden de filas (row-major) con buffer inmutable.

    ``requires_grad`` marca las hojas (parámetros) y los resultados que
    dependen de ellas mientras hay una cinta activa.
    """
    __slots__ = ("_data", "requires_grad", "name", "__weakref__")

    def __init__(self, data: Fill, requires_grad: bool = False, *,
                 dtype: Optional[npt.DTypeLike] = None, name: Optional[str] = None) -> None:
        array = np.array(data, dtype=dtype if dtype is not None else Config.dtype(), copy=True)
        Shape(array.shape)
        _check_finite(array, "tensor")
        array.flags.writeable = False
        self._data: Array = array
        self.requires_grad = requires_grad
        self.name = name

    @classmethod
    def _wrap(cls, array: Array, requires_grad: bool = False, origin: str = "op") -> Tensor:
        """Construye sin copiar; reservado a las operaciones internas."""
        Shape(array.shape)
        _check_finite(array, origin)
        new = cls.__new__(cls)
        array.flags.writeable = False
        new._data = array
        new.requires_grad = requires_grad
        new.name = None
        return new

    # ---------------- propiedades -----------------------------------------
    @property
    def data(self) -> Array:
        """Buffer numpy de sólo lectura."""
        return self._data

    @property
    def shape(self) -> Shape:
        return Shape(self._data.shape)

    @property
    def dtype(self) -> np.dtype[Any]:
        return self._data.dtype

    @property
    def numel(self) -> int:
        return int(self._data.size)

    def item(self) -> float:
        if self._data.size != 1:
            raise ShapeError(f"item() requiere un único elemento, la forma es {self.shape}.")
        return float(self._data.reshape(-1)[0])

    def numpy(self) -> Array:
        """Copia escribible del contenido."""
        return np.array(self._data, copy=True)

    def tolist(self) -> Any:
        return self._data.tolist()

    # ---------------- hojas / grafo ----------------------------------------
    def as_leaf(self, requires_grad: bool = True) -> Tensor:
        """Nueva hoja que comparte el buffer (los tensores son inmutables)."""
        leaf = Tensor._wrap(self._data, requires_grad)
        leaf.name = self.name
        return leaf

    def equal(self, other: Tensor) -> bool:
        """Igualdad bit a bit (forma, dtype y contenido)."""
        return self.dtype == other.dtype and bool(np.array_equal(self._data, other._data))

    # ---------------- aritmética (delegada en ops) -------------------------
    def __add__(self, other: Tensor) -> Tensor:
        from ..ops import elementwise_add
        return elementwise_add(self, other)

    def __mul__(self, other: Union[Tensor, float, int]) -> Tensor:
        from ..ops import elementwise_mul, scale
        if isinstance(other, Tensor):
            return elementwise_mul(self, other)
        return scale(self, float(other))

    def __rmul__(self, other: Union[float, int]) -> Tensor:
        from ..ops import scale
        return scale(self, float(other))

    def __repr__(self) -> str:
        grad = ", requires_grad=True" if self.requires_grad else ""
        return f"Tensor(shape={self.shape}, dtype={self.dtype}{grad})"


# ---------------------------------------------------------------------------
# 4.  Factorías ==============================================================
# ---------------------------------------------------------------------------
def tensor_new(shape: Union[Shape, Sequence[int]], fill: Fill = 0.0,
               requires_grad: bool = False) -> Tensor:
    """
    Crea un tensor con la forma dada.

    ``fill`` puede ser un escalar (relleno constante) o una lista de valores en
    orden de filas cuya longitud coincide con el número de elementos.
    """
    shape = shape if isinstance(shape, Shape) else Shape(shape)
    dtype = Config.dtype()
    if isinstance(fill, (int, float)):
        if not math.isfinite(fill):
            raise NonFiniteError(f"Relleno no finito: {fill}.")
        values = np.full(shape.dims, fill, dtype=dtype)
    else:
        flat = np.asarray(fill, dtype=dtype).reshape(-1)
        if flat.size != shape.numel:
            raise ShapeError(
                f"Se esperaban {shape.numel} valores para la forma {shape}, se recibieron {flat.size}."
            )
        values = flat.reshape(shape.dims)
    return Tensor(values, requires_grad=requires_grad)


def zeros(shape: Union[Shape, Sequence[int]]) -> Tensor:
    return tensor_new(shape, 0.0)


def ones(shape: Union[Shape, Sequence[int]]) -> Tensor:
    return tensor_new(shape, 1.0)


def stack(tensors: Sequence[Tensor]) -> Tensor:
    """Apila tensores (C,H,W) en un lote (N,C,H,W)."""
    if not tensors:
        raise ShapeError("No se puede apilar una lista vacía.")
    return Tensor._wrap(np.stack([t.data for t in tensors]), False, "stack")
