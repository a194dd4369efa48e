"""
Jerarquía de excepciones de dpenet.

Cada error lleva una ``category`` (prefijo máquina ``error:<category>:`` en la
CLI) y un ``exit_code`` distinto de cero.
"""
from typing import ClassVar


class DpeNetError(Exception):
    """Raíz de todos los errores de la librería."""
    category: ClassVar[str] = "internal"
    exit_code: ClassVar[int] = 1


class ShapeError(DpeNetError, ValueError):
    """Formas incompatibles o fuera de contrato."""
    category = "shape"
    exit_code = 6


class NonFiniteError(DpeNetError, ArithmeticError):
    """Una operación produjo NaN o Inf."""
    category = "nonfinite"
    exit_code = 7


class GraphError(DpeNetError):
    """Uso incorrecto de la cinta de autodiferenciación."""
    category = "graph"
    exit_code = 8


class ConfigError(DpeNetError, ValueError):
    """Configuración inválida (fichero, flags o dataclasses)."""
    category = "config"
    exit_code = 3


class TensorFormatError(DpeNetError, ValueError):
    """Fichero binario DPET, PGM o PPM mal formado."""
    category = "format"
    exit_code = 5


class CheckpointError(DpeNetError):
    """Checkpoint corrupto o incompatible con la configuración."""
    category = "checkpoint"
    exit_code = 9


class DataError(DpeNetError):
    """Dataset ausente, incompleto o con parámetros degenerados."""
    category = "data"
    exit_code = 10


class DivergenceError(NonFiniteError):
    """La pérdida de entrenamiento dejó de ser finita."""
    category = "divergence"
    exit_code = 11


class GradientCheckError(DpeNetError):
    """El gradiente automático no coincide con diferencias finitas."""
    category = "gradcheck"
    exit_code = 12
