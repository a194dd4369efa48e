# netpbm.py
# --------------------------------------------------------------
# Lectura / escritura de PGM (P5, máscaras) y PPM (P6, imágenes)
# --------------------------------------------------------------
#  • 8 bits, maxval 255. Cuantización floor(v·255 + 0.5); lectura v/255.
#  • Cabecera: magic, ancho, alto, maxval separados por blancos
#    (se admiten comentarios '#'), un único blanco y la carga útil.
# --------------------------------------------------------------
from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from ..errors import DataError, TensorFormatError
from ..tensor import Tensor

PathLike = Union[str, Path]

_WHITESPACE = b" \t\n\r\x0b\x0c"
_CHANNELS = {b"P5": 1, b"P6": 3}


def _quantize(values: np.ndarray) -> np.ndarray:  # type: ignore[type-arg]
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise DataError("Los valores a escribir deben estar en [0, 1].")
    return np.floor(values.astype(np.float64) * 255.0 + 0.5).astype(np.uint8)


def encode_netpbm(tensor: Tensor) -> bytes:
    """(1,H,W) -> P5, (3,H,W) -> P6."""
    if tensor.shape.rank != 3 or tensor.data.shape[0] not in (1, 3):
        raise DataError(f"Se esperaba un tensor (1,H,W) o (3,H,W), forma {tensor.shape}.")
    c, h, w = tensor.data.shape
    magic = b"P5" if c == 1 else b"P6"
    payload = _quantize(tensor.data).transpose(1, 2, 0).tobytes()
    return magic + f"\n{w} {h}\n255\n".encode("ascii") + payload


def _header_fields(data: bytes) -> tuple[list[bytes], int]:
    """Lee los cuatro campos de la cabecera; devuelve campos y offset de la carga."""
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos] in _WHITESPACE:
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        if pos >= len(data):
            raise TensorFormatError("Cabecera Netpbm truncada.")
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        fields.append(data[start:pos])
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise TensorFormatError("Cabecera Netpbm sin separador antes de los datos.")
    return fields, pos + 1


def decode_netpbm(data: bytes) -> Tensor:
    fields, offset = _header_fields(data)
    magic = fields[0]
    if magic not in _CHANNELS:
        raise TensorFormatError(f"Formato Netpbm no soportado: {magic!r} (se admiten P5 y P6).")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise TensorFormatError(f"Cabecera Netpbm mal formada: {fields[1:]!r}.") from None
    if width < 1 or height < 1:
        raise TensorFormatError(f"Dimensiones Netpbm inválidas: {width}x{height}.")
    if maxval != 255:
        raise TensorFormatError(f"maxval {maxval} no soportado (sólo 255).")
    channels = _CHANNELS[magic]
    expected = width * height * channels
    payload = data[offset:offset + expected]
    if len(payload) < expected:
        raise TensorFormatError(f"Datos Netpbm truncados: {len(payload)} de {expected} bytes.")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, channels)
    return Tensor(pixels.transpose(2, 0, 1).astype(np.float64) / 255.0)


def write_pgm(path: PathLike, mask: Tensor) -> None:
    if mask.data.shape[:1] != (1,):
        raise DataError(f"Una máscara PGM debe ser (1,H,W), forma {mask.shape}.")
    Path(path).write_bytes(encode_netpbm(mask))


def read_pgm(path: PathLike) -> Tensor:
    tensor = decode_netpbm(Path(path).read_bytes())
    if tensor.data.shape[0] != 1:
        raise TensorFormatError(f"{path}: se esperaba un PGM (P5).")
    return tensor


def write_ppm(path: PathLike, image: Tensor) -> None:
    if image.data.shape[:1] != (3,):
        raise DataError(f"Una imagen PPM debe ser (3,H,W), forma {image.shape}.")
    Path(path).write_bytes(encode_netpbm(image))


def read_ppm(path: PathLike) -> Tensor:
    tensor = decode_netpbm(Path(path).read_bytes())
    if tensor.data.shape[0] != 3:
        raise TensorFormatError(f"{path}: se esperaba un PPM (P6).")
    return tensor
