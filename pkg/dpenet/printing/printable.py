from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Mapping, Union

RecordValue = Union[int, float, str]


class Printable(ABC):
    """
    Interfaz para objetos representables.

    Proporciona un protocolo para:
      - Representación en texto (`__str__`) para la consola.
      - Representación máquina (`as_record`): pares clave → valor que el
        formateador convierte en una línea ``clave=valor``.
    """

    @abstractmethod
    def __str__(self) -> str:
        """Representación del objeto como texto legible."""

    @abstractmethod
    def as_record(self) -> Mapping[str, RecordValue]:
        """Campos del objeto, en el orden en que deben imprimirse."""

    def record_line(self) -> str:
        from .report_printer import ReportFormatter
        return ReportFormatter.record_line(self.as_record())

    def render(self) -> str:
        """Texto según el estilo activo del formateador."""
        from .core import ReportStyle
        from .report_printer import ReportFormatter
        if ReportFormatter.style is ReportStyle.RECORD:
            return self.record_line()
        return str(self)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self.record_line()})'
