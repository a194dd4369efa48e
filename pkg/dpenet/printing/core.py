from enum import Enum


class ReportStyle(Enum):
    TEXT = 'TEXT'      # Informe legible, una métrica por línea
    RECORD = 'RECORD'  # Una línea "clave=valor" por objeto


class BasicPrinter:
    """
    Clase base de los formateadores.
    Guarda el estilo de salida y la precisión de los flotantes a nivel de clase.
    """
    style = ReportStyle.TEXT
    precision = 6

    @classmethod
    def set_style(cls, style: ReportStyle) -> None:
        """Cambia el estilo de salida de todos los formateadores."""
        cls.style = style

    @classmethod
    def set_precision(cls, digits: int) -> None:
        if digits < 1:
            raise ValueError(f"La precisión debe ser ≥ 1: {digits}")
        cls.precision = digits
