from __future__ import annotations

from typing import Union

from .dual_block import DualBlock
from .single_block import SingleBlock


def param_count_block(b: Union[DualBlock, SingleBlock]) -> int:
    """
    Escalares entrenables del bloque: pesos, sesgos, gamma y beta.

    Las estadísticas acumuladas de BN no cuentan.
    """
    return b.parameter_count()
