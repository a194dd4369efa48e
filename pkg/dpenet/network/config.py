# config.py
# --------------------------------------------------------------
# Descripción declarativa de una instancia de la red
# --------------------------------------------------------------
#  • NetVariant: ramas que se construyen (filas de la ablación).
#  • NetConfig : anchos por etapa, bloques por etapa, geometría de entrada.
#  • to_text / from_text: bloque "clave = valor" UTF-8 de los checkpoints.
# --------------------------------------------------------------
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Mapping

from ..config_file import ConfigEntry, coerce, parse_config_text, parse_hw, parse_int_list
from ..errors import ConfigError


class NetVariant(Enum):
    DUAL_ONLY = 'dual_only'
    SINGLE_ONLY = 'single_only'
    BOTH = 'both'

    @property
    def has_dual(self) -> bool:
        return self is not NetVariant.SINGLE_ONLY

    @property
    def has_single(self) -> bool:
        return self is not NetVariant.DUAL_ONLY

    @classmethod
    def parse(cls, text: str) -> NetVariant:
        try:
            return cls(text.strip())
        except ValueError:
            options = ", ".join(v.value for v in cls)
            raise ConfigError(f"Variante '{text}' desconocida (opciones: {options}).") from None


NET_KEYS = ("variant", "stage_widths", "blocks_per_stage", "input_channels", "input_hw")


@dataclass(frozen=True)
class NetConfig:
    variant: NetVariant = NetVariant.BOTH
    stage_widths: tuple[int, ...] = (16, 32, 64, 128)
    blocks_per_stage: int = 1
    input_channels: int = 3
    input_hw: tuple[int, int] = field(default=(288, 384))

    def __post_init__(self) -> None:
        object.__setattr__(self, "stage_widths", tuple(int(w) for w in self.stage_widths))
        object.__setattr__(self, "input_hw", (int(self.input_hw[0]), int(self.input_hw[1])))

    @property
    def num_stages(self) -> int:
        return len(self.stage_widths)

    @property
    def divisor(self) -> int:
        return 2 ** self.num_stages

    def validate(self) -> NetConfig:
        if self.num_stages < 1:
            raise ConfigError("stage_widths necesita al menos una etapa.")
        if any(w < 1 for w in self.stage_widths):
            raise ConfigError(f"Todos los anchos deben ser ≥ 1: {list(self.stage_widths)}.")
        if self.blocks_per_stage < 1:
            raise ConfigError(f"blocks_per_stage debe ser ≥ 1: {self.blocks_per_stage}.")
        if self.input_channels < 1:
            raise ConfigError(f"input_channels debe ser ≥ 1: {self.input_channels}.")
        self.check_hw(self.input_hw)
        return self

    def check_hw(self, hw: tuple[int, int]) -> None:
        h, w = hw
        if h < 1 or w < 1 or h % self.divisor or w % self.divisor:
            raise ConfigError(
                f"La resolución {h}x{w} no es divisible por 2^{self.num_stages} = {self.divisor}."
            )

    def with_overrides(self, **changes: Any) -> NetConfig:
        return replace(self, **changes)

    # ---------------- texto ------------------------------------------------
    def to_text(self) -> str:
        widths = ",".join(str(w) for w in self.stage_widths)
        h, w = self.input_hw
        return (
            f"variant = {self.variant.value}\n"
            f"stage_widths = {widths}\n"
            f"blocks_per_stage = {self.blocks_per_stage}\n"
            f"input_channels = {self.input_channels}\n"
            f"input_hw = {h}x{w}\n"
        )

    @classmethod
    def from_entries(cls, entries: Mapping[str, ConfigEntry], base: NetConfig | None = None) -> NetConfig:
        """Aplica sobre ``base`` las claves de red presentes en ``entries``."""
        changes: dict[str, Any] = {}
        if "variant" in entries:
            changes["variant"] = NetVariant.parse(entries["variant"].value)
        if "stage_widths" in entries:
            changes["stage_widths"] = coerce(entries["stage_widths"], parse_int_list)
        if "blocks_per_stage" in entries:
            changes["blocks_per_stage"] = coerce(entries["blocks_per_stage"], int)
        if "input_channels" in entries:
            changes["input_channels"] = coerce(entries["input_channels"], int)
        if "input_hw" in entries:
            changes["input_hw"] = coerce(entries["input_hw"], parse_hw)
        return replace(base if base is not None else cls(), **changes)

    @classmethod
    def from_text(cls, text: str) -> NetConfig:
        entries = parse_config_text(text, allowed=NET_KEYS)
        missing = [k for k in NET_KEYS if k not in entries]
        if missing:
            raise ConfigError(f"Faltan claves de red: {', '.join(missing)}.")
        return cls.from_entries(entries).validate()
