# checkpoint.py
# --------------------------------------------------------------
# Checkpoints binarios de la red
# --------------------------------------------------------------
#  Contenedor:  "DPEK" · versión (1 byte)
#               · [u32 LE longitud] configuración (texto "clave = valor")
#               · [u32 LE longitud] manifiesto (una línea "nombre<TAB>d0,d1,..")
#               · [u32 LE longitud] registros DPET concatenados, en orden
#                 del manifiesto (parámetros y estadísticas de BN)
# --------------------------------------------------------------
from __future__ import annotations

import logging
import struct
from pathlib import Path
from typing import Optional, Union

from ..config_file import coerce, parse_config_text
from ..errors import CheckpointError, ConfigError, ShapeError, TensorFormatError
from ..tensor import SeededRng, Tensor, decode_tensor, encode_tensor
from .builder import Network, build_network
from .config import NET_KEYS, NetConfig

logger = logging.getLogger(__name__)

MAGIC = b"DPEK"
VERSION = 1
_LENGTH = struct.Struct("<I")

PathLike = Union[str, Path]


def _section(payload: bytes) -> bytes:
    return _LENGTH.pack(len(payload)) + payload


def encode_checkpoint(net: Network) -> bytes:
    config = net.cfg.to_text() + f"rng_seed = {net.rng_seed}\n"
    state = net.state()
    manifest = "".join(
        f"{name}\t{','.join(str(d) for d in t.data.shape)}\n" for name, t in state.items()
    )
    records = b"".join(encode_tensor(t) for t in state.values())
    return (MAGIC + bytes([VERSION]) + _section(config.encode("utf-8"))
            + _section(manifest.encode("utf-8")) + _section(records))


def save_checkpoint(net: Network, path: PathLike) -> None:
    data = encode_checkpoint(net)
    Path(path).write_bytes(data)
    logger.info("checkpoint guardado en %s (%d bytes)", path, len(data))


# ---------------------------------------------------------------------------
# Lectura ===================================================================
# ---------------------------------------------------------------------------
def _read_section(data: bytes, offset: int, what: str) -> tuple[bytes, int]:
    if len(data) - offset < _LENGTH.size:
        raise CheckpointError(f"Checkpoint corrupto: falta la longitud de la sección '{what}'.")
    (length,) = _LENGTH.unpack_from(data, offset)
    offset += _LENGTH.size
    if len(data) - offset < length:
        raise CheckpointError(f"Checkpoint corrupto: sección '{what}' truncada.")
    return data[offset:offset + length], offset + length


def _parse_manifest(text: str) -> list[tuple[str, tuple[int, ...]]]:
    rows: list[tuple[str, tuple[int, ...]]] = []
    for number, line in enumerate(text.splitlines(), start=1):
        name, sep, dims = line.partition("\t")
        if not sep or not name:
            raise CheckpointError(f"Manifiesto corrupto en la línea {number}.")
        try:
            rows.append((name, tuple(int(d) for d in dims.split(",")) if dims else ()))
        except ValueError:
            raise CheckpointError(f"Manifiesto corrupto en la línea {number}: '{dims}'.") from None
    return rows


def decode_checkpoint(data: bytes) -> tuple[NetConfig, int, dict[str, Tensor]]:
    """Devuelve configuración, semilla y tensores por nombre (orden del manifiesto)."""
    if len(data) < len(MAGIC) + 1:
        raise CheckpointError("Checkpoint corrupto: cabecera truncada.")
    if data[:4] != MAGIC:
        raise CheckpointError(f"Magic inválido {data[:4]!r}, se esperaba {MAGIC!r}.")
    if data[4] != VERSION:
        raise CheckpointError(f"Versión de checkpoint {data[4]} no soportada.")
    offset = len(MAGIC) + 1
    config_raw, offset = _read_section(data, offset, "config")
    manifest_raw, offset = _read_section(data, offset, "manifest")
    records, offset = _read_section(data, offset, "tensors")
    if offset != len(data):
        raise CheckpointError(f"Checkpoint corrupto: {len(data) - offset} bytes sobrantes.")

    try:
        entries = parse_config_text(config_raw.decode("utf-8"), allowed=NET_KEYS + ("rng_seed",))
        if "rng_seed" not in entries:
            raise ConfigError("falta 'rng_seed'")
        cfg = NetConfig.from_entries(entries).validate()
        seed = coerce(entries["rng_seed"], int)
        manifest = _parse_manifest(manifest_raw.decode("utf-8"))
    except (ConfigError, UnicodeDecodeError) as exc:
        raise CheckpointError(f"Checkpoint corrupto: configuración ilegible ({exc}).") from exc

    tensors: dict[str, Tensor] = {}
    cursor = 0
    for name, dims in manifest:
        try:
            tensor, cursor = decode_tensor(records, cursor)
        except TensorFormatError as exc:
            raise CheckpointError(f"Checkpoint corrupto en '{name}': {exc}") from exc
        if tensor.data.shape != dims:
            raise CheckpointError(f"'{name}': el manifiesto dice {dims}, el registro {tensor.data.shape}.")
        tensors[name] = tensor
    if cursor != len(records):
        raise CheckpointError("Checkpoint corrupto: registros sin entrada en el manifiesto.")
    return cfg, seed, tensors


def load_checkpoint(path: PathLike, net: Optional[Network] = None) -> Network:
    """
    Reconstruye la red guardada en ``path``.

    Con ``net`` los tensores se cargan en esa red: un nombre ausente es un
    ``CheckpointError`` y una forma distinta un ``ShapeError`` que nombra el
    parámetro.
    """
    cfg, seed, tensors = decode_checkpoint(Path(path).read_bytes())
    target = net if net is not None else build_network(cfg, SeededRng(seed))
    expected = target.state()
    missing = [name for name in expected if name not in tensors]
    extra = [name for name in tensors if name not in expected]
    for name in expected:
        if name in tensors and tensors[name].data.shape != expected[name].data.shape:
            raise ShapeError(
                f"Parámetro '{name}': el checkpoint tiene forma {tensors[name].shape}, "
                f"la red espera {expected[name].shape}."
            )
    if missing or extra:
        raise CheckpointError(
            f"El manifiesto no coincide con la red (faltan: {missing[:3]}, sobran: {extra[:3]})."
        )
    target.load_state(tensors)
    if net is None:
        target.rng_seed = seed
    logger.info("checkpoint cargado desde %s", path)
    return target
