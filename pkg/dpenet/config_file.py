"""
Parser de ficheros de configuración ``clave = valor``.

Formato: una asignación por línea, ``#`` inicia un comentario hasta el fin de
línea, las líneas en blanco se ignoran. Lo usan el bloque de configuración de
los checkpoints y el fichero ``--config`` de la CLI.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TypeVar

from .errors import ConfigError

T = TypeVar("T")

_KEY_CHARS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.")


class ConfigToken:
    KEY = "KEY"
    EQUALS = "EQUALS"
    VALUE = "VALUE"
    NEWLINE = "NEWLINE"
    END = "END"

    def __init__(self, type_: str, value: Optional[str] = None, line: int = 0) -> None:
        self.type: str = type_
        self.value: Optional[str] = value
        self.line: int = line

    def __repr__(self) -> str:
        return f"ConfigToken({self.type}, {self.value}, línea {self.line})"


class ConfigLexer:
    """
    Divide el texto en tokens. Tras un ``=`` todo lo que queda hasta el
    comentario o el salto de línea es un único VALUE.
    """

    def __init__(self, text: str) -> None:
        self.text: str = text
        self.pos: int = 0
        self.length: int = len(text)
        self.line: int = 1
        self._after_equals = False

    def _skip_blanks_and_comments(self) -> None:
        while self.pos < self.length:
            ch = self.text[self.pos]
            if ch in " \t\r":
                self.pos += 1
            elif ch == "#":
                while self.pos < self.length and self.text[self.pos] != "\n":
                    self.pos += 1
            else:
                break

    def next_token(self) -> ConfigToken:
        self._skip_blanks_and_comments()
        if self.pos >= self.length:
            return ConfigToken(ConfigToken.END, line=self.line)
        ch = self.text[self.pos]
        if ch == "\n":
            self.pos += 1
            self._after_equals = False
            self.line += 1
            return ConfigToken(ConfigToken.NEWLINE, line=self.line - 1)
        if self._after_equals:
            start = self.pos
            while self.pos < self.length and self.text[self.pos] not in "#\n":
                self.pos += 1
            self._after_equals = False
            return ConfigToken(ConfigToken.VALUE, self.text[start:self.pos].strip(), self.line)
        if ch == "=":
            self.pos += 1
            self._after_equals = True
            return ConfigToken(ConfigToken.EQUALS, "=", self.line)
        if ch in _KEY_CHARS:
            start = self.pos
            while self.pos < self.length and self.text[self.pos] in _KEY_CHARS:
                self.pos += 1
            return ConfigToken(ConfigToken.KEY, self.text[start:self.pos], self.line)
        raise ConfigError(f"Carácter inesperado '{ch}' en la línea {self.line}.")


@dataclass(frozen=True, slots=True)
class ConfigEntry:
    key: str
    value: str
    line: int


class ConfigParser:
    """
    Gramática:
        file  = { [ entry ] NEWLINE } END
        entry = KEY '=' VALUE
    """

    def __init__(self, text: str) -> None:
        self.lexer = ConfigLexer(text)
        self.current_token: ConfigToken = self.lexer.next_token()

    def eat(self, token_type: str) -> ConfigToken:
        token = self.current_token
        if token.type != token_type:
            raise ConfigError(
                f"Línea {token.line}: se esperaba {token_type} pero se encontró {token.type}"
                + (f" '{token.value}'." if token.value else ".")
            )
        self.current_token = self.lexer.next_token()
        return token

    def parse(self) -> dict[str, ConfigEntry]:
        entries: dict[str, ConfigEntry] = {}
        while self.current_token.type != ConfigToken.END:
            if self.current_token.type == ConfigToken.NEWLINE:
                self.eat(ConfigToken.NEWLINE)
                continue
            entry = self.entry()
            if entry.key in entries:
                raise ConfigError(
                    f"Línea {entry.line}: clave '{entry.key}' repetida "
                    f"(ya definida en la línea {entries[entry.key].line})."
                )
            entries[entry.key] = entry
            if self.current_token.type != ConfigToken.END:
                self.eat(ConfigToken.NEWLINE)
        return entries

    def entry(self) -> ConfigEntry:
        key = self.eat(ConfigToken.KEY)
        self.eat(ConfigToken.EQUALS)
        if self.current_token.type != ConfigToken.VALUE or not self.current_token.value:
            raise ConfigError(f"Línea {key.line}: la clave '{key.value}' no tiene valor.")
        value = self.eat(ConfigToken.VALUE)
        return ConfigEntry(str(key.value), str(value.value), key.line)


def parse_config_text(text: str, allowed: Optional[Iterable[str]] = None) -> dict[str, ConfigEntry]:
    """Analiza el texto; con ``allowed``, una clave desconocida es un error."""
    entries = ConfigParser(text).parse()
    if allowed is not None:
        known = set(allowed)
        for entry in entries.values():
            if entry.key not in known:
                raise ConfigError(f"Línea {entry.line}: clave desconocida '{entry.key}'.")
    return entries


def coerce(entry: ConfigEntry, convert: Callable[[str], T]) -> T:
    """Convierte el valor de una entrada; los fallos nombran clave y línea."""
    try:
        return convert(entry.value)
    except (ValueError, TypeError) as exc:
        raise ConfigError(
            f"Línea {entry.line}: valor inválido para '{entry.key}': '{entry.value}' ({exc})."
        ) from exc


# ---------------- conversores comunes ----------------------------------------
def parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"'{text}' no es un booleano")


def parse_int_list(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"'{text}' no es una lista de enteros separada por comas")
    return tuple(int(p) for p in parts)


def parse_hw(text: str) -> tuple[int, int]:
    """``"288x384"`` -> (288, 384): alto x ancho."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"'{text}' no tiene la forma HxW")
    return int(parts[0]), int(parts[1])
