"""
Combinación de configuración para la CLI.

Precedencia: valores por defecto < fichero ``--config`` < flags de la línea de
comandos. Las claves admitidas son las de red, las de entrenamiento y las rutas.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from ..config_file import ConfigEntry, parse_config_text
from ..network import NetConfig, NetVariant
from ..network.config import NET_KEYS
from ..train import TRAIN_KEYS, TrainConfig

PATH_KEYS = ("data", "out", "log")
ALL_KEYS = NET_KEYS + TRAIN_KEYS + PATH_KEYS


@dataclass(frozen=True)
class RunSettings:
    net: NetConfig
    train: TrainConfig
    paths: dict[str, str]
    hw_from_config: bool


def read_config_file(path: Optional[str]) -> dict[str, ConfigEntry]:
    if path is None:
        return {}
    return parse_config_text(Path(path).read_text(encoding="utf-8"), allowed=ALL_KEYS)


def resolve_settings(args: argparse.Namespace) -> RunSettings:
    entries = read_config_file(getattr(args, "config", None))
    net = NetConfig.from_entries(entries)
    train = TrainConfig.from_entries(entries)
    paths = {key: entries[key].value for key in PATH_KEYS if key in entries}

    net_flags: dict[str, Any] = {}
    if getattr(args, "variant", None) is not None:
        net_flags["variant"] = NetVariant.parse(args.variant)
    if getattr(args, "widths", None) is not None:
        net_flags["stage_widths"] = args.widths
    if getattr(args, "blocks_per_stage", None) is not None:
        net_flags["blocks_per_stage"] = args.blocks_per_stage
    if getattr(args, "size", None) is not None:
        net_flags["input_hw"] = args.size
    net = net.with_overrides(**net_flags)

    train_flags: dict[str, Any] = {}
    for flag in ("epochs", "batch_size", "lr", "seed", "eval_every", "momentum", "threshold"):
        value = getattr(args, flag, None)
        if value is not None:
            train_flags[flag] = value
    if getattr(args, "lr", None) is not None:
        train_flags["lr_override"] = None
    train = train.with_overrides(**train_flags)

    for key in PATH_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            paths[key] = str(value)
    hw_given = "input_hw" in entries or getattr(args, "size", None) is not None
    return RunSettings(net, train, paths, hw_given)
