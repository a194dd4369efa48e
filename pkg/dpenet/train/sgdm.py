from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .._config import Config
from ..errors import NonFiniteError, ShapeError
from ..tensor import Tensor
from ..tensor.core.tensor_core import Array


@dataclass
class SgdmState:
    """
    Estado de SGD con momento clásico.

    ``velocity`` se crea a ceros la primera vez que se ve cada parámetro.
    """
    lr: float
    momentum: float = field(default_factory=lambda: Config.sgdm_momentum)
    velocity: dict[str, Array] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lr < 0:
            raise ValueError(f"lr debe ser ≥ 0: {self.lr}")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError(f"momentum debe estar en [0, 1): {self.momentum}")

    @classmethod
    def for_params(cls, params: Mapping[str, Tensor], lr: float,
                   momentum: Optional[float] = None) -> SgdmState:
        state = cls(lr, Config.sgdm_momentum if momentum is None else momentum)
        state.velocity = {name: np.zeros_like(p.data) for name, p in params.items()}
        return state


def sgdm_step(params: Mapping[str, Tensor], grads: Mapping[str, Tensor],
              state: SgdmState) -> dict[str, Tensor]:
    """
    v ← momentum·v + g ;  p ← p − lr·v

    Devuelve los parámetros nuevos (los tensores son inmutables) y actualiza
    ``state.velocity``. Formas y nombres deben coincidir exactamente.
    """
    if set(params) != set(grads):
        missing = sorted(set(params) ^ set(grads))
        raise ShapeError(f"Parámetros y gradientes no coinciden: {missing[:3]}.")

    updated: dict[str, Tensor] = {}
    new_velocity: dict[str, Array] = {}
    for name, p in params.items():
        g = grads[name].data
        if g.shape != p.data.shape:
            raise ShapeError(f"Gradiente de '{name}' con forma {g.shape}, el parámetro es {p.data.shape}.")
        if not np.isfinite(g).all():
            raise NonFiniteError(f"Gradiente no finito en '{name}'.")
        v = state.velocity.get(name)
        if v is None:
            v = np.zeros_like(p.data)
        elif v.shape != p.data.shape:
            raise ShapeError(f"Velocidad de '{name}' con forma {v.shape}, el parámetro es {p.data.shape}.")
        dtype = p.dtype.type
        v = dtype(state.momentum) * v + g.astype(p.dtype, copy=False)
        new_velocity[name] = v
        updated[name] = Tensor._wrap(p.data - dtype(state.lr) * v, True, "sgdm")
    state.velocity.update(new_velocity)
    return updated
