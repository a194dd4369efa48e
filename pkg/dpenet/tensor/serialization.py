"""
Formato binario de tensores ``DPET``.

Registro: magic ``DPET`` · versión (1 byte, =1) · código de dtype (1 byte,
0 = float32, 1 = float64) · rango (1 byte) · rango × extensión uint32 LE ·
carga útil en orden de filas little-endian.
"""
from __future__ import annotations

import struct
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import TensorFormatError
from .core.tensor_core import Tensor

MAGIC = b"DPET"
VERSION = 1
DTYPE_CODES: dict[int, np.dtype] = {  # type: ignore[type-arg]
    0: np.dtype("<f4"),
    1: np.dtype("<f8"),
}
_CODE_BY_KIND = {np.dtype("float32"): 0, np.dtype("float64"): 1}
_HEADER = struct.Struct("<4sBBB")


def encode_tensor(tensor: Tensor) -> bytes:
    code = _CODE_BY_KIND.get(np.dtype(tensor.dtype))
    if code is None:
        raise TensorFormatError(f"dtype {tensor.dtype} no serializable.")
    dims = tensor.data.shape
    header = _HEADER.pack(MAGIC, VERSION, code, len(dims))
    extents = struct.pack(f"<{len(dims)}I", *dims)
    payload = np.ascontiguousarray(tensor.data, dtype=DTYPE_CODES[code]).tobytes()
    return header + extents + payload


def decode_tensor(buffer: bytes, offset: int = 0) -> tuple[Tensor, int]:
    """Lee un registro en ``offset``; devuelve el tensor y el offset siguiente."""
    if len(buffer) - offset < _HEADER.size:
        raise TensorFormatError("Registro DPET truncado (cabecera).")
    magic, version, code, rank = _HEADER.unpack_from(buffer, offset)
    if magic != MAGIC:
        raise TensorFormatError(f"Magic inválido {magic!r}, se esperaba {MAGIC!r}.")
    if version != VERSION:
        raise TensorFormatError(f"Versión DPET {version} no soportada.")
    if code not in DTYPE_CODES:
        raise TensorFormatError(f"Código de dtype desconocido: {code}.")
    offset += _HEADER.size
    if len(buffer) - offset < 4 * rank:
        raise TensorFormatError("Registro DPET truncado (extensiones).")
    dims = struct.unpack_from(f"<{rank}I", buffer, offset)
    offset += 4 * rank
    dtype = DTYPE_CODES[code]
    count = 1
    for d in dims:
        count *= d
    nbytes = count * dtype.itemsize
    if len(buffer) - offset < nbytes:
        raise TensorFormatError("Registro DPET truncado (datos).")
    values = np.frombuffer(buffer, dtype=dtype, count=count, offset=offset).reshape(dims)
    tensor = Tensor(values, dtype=dtype.newbyteorder("="))
    return tensor, offset + nbytes


def write_tensor(path: Union[str, Path], tensor: Tensor) -> None:
    Path(path).write_bytes(encode_tensor(tensor))


def read_tensor(path: Union[str, Path]) -> Tensor:
    data = Path(path).read_bytes()
    tensor, end = decode_tensor(data)
    if end != len(data):
        raise TensorFormatError(f"{len(data) - end} bytes sobrantes tras el registro DPET.")
    return tensor
