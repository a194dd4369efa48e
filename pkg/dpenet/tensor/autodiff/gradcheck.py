from __future__ import annotations

import logging
from typing import Callable, Iterable, Optional

import numpy as np

from ...errors import GradientCheckError, ShapeError
from ..core.tensor_core import Tensor
from .tape import Tape, backward

logger = logging.getLogger(__name__)

ScalarFn = Callable[[Tensor], Tensor]

EPS_RANGE = (1e-7, 1e-3)


def _scalar_value(y: Tensor) -> float:
    if y.numel != 1:
        raise ShapeError(f"La función debe devolver un escalar, devolvió {y.shape}.")
    return y.item()


def finite_difference_check(f: ScalarFn, x: Tensor, eps: float = 1e-6, *,
                            indices: Optional[Iterable[int]] = None,
                            kink_tolerance: Optional[float] = None) -> float:
    """
    Compara el gradiente automático de ``f`` en ``x`` con diferencias centrales.

    Devuelve el máximo sobre las coordenadas de ``|ad - fd| / max(1, |fd|)``.
    ``indices`` restringe la comparación a un subconjunto de coordenadas
    (índices planos en orden de filas).

    Con ``kink_tolerance`` se descartan las coordenadas cuya segunda diferencia
    ``|f(x+eps) - 2 f(x) + f(x-eps)|`` la supera: el intervalo contiene un punto
    no derivable (cero de una ReLU, empate de max_pool2).
    """
    if x.dtype != np.float64:
        raise GradientCheckError(f"La comprobación requiere modo float64, x es {x.dtype}.")
    if not EPS_RANGE[0] <= eps <= EPS_RANGE[1]:
        raise ValueError(f"eps={eps} fuera de [{EPS_RANGE[0]}, {EPS_RANGE[1]}].")

    leaf = x.as_leaf()
    with Tape() as tape:
        y = f(leaf)
    f_center = _scalar_value(y)
    if not y.requires_grad:
        analytic = np.zeros_like(x.data)
    else:
        analytic = backward(y, tape)[leaf].data

    base = x.numpy()
    coords = range(base.size) if indices is None else indices
    worst = 0.0
    skipped = 0
    for i in coords:
        shifted = base.copy()
        shifted.flat[i] = base.flat[i] + eps
        f_plus = _scalar_value(f(Tensor(shifted, dtype=np.float64)))
        shifted.flat[i] = base.flat[i] - eps
        f_minus = _scalar_value(f(Tensor(shifted, dtype=np.float64)))
        if kink_tolerance is not None and abs(f_plus - 2.0 * f_center + f_minus) > kink_tolerance:
            skipped += 1
            continue
        numeric = (f_plus - f_minus) / (2.0 * eps)
        error = abs(float(analytic.flat[i]) - numeric) / max(1.0, abs(numeric))
        worst = max(worst, error)
    if skipped:
        logger.debug("%d coordenadas descartadas por estar junto a un punto no derivable", skipped)
    return worst
