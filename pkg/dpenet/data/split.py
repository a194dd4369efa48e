from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from ..errors import DataError, TensorFormatError
from ..tensor import SeededRng

MIN_IDS = 10
SECTIONS = ("train", "test", "val")


@dataclass(frozen=True)
class DatasetSplit:
    """Particiones disjuntas de identificadores de muestra."""
    train: tuple[str, ...]
    test: tuple[str, ...]
    validation: tuple[str, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for part in (self.train, self.test, self.validation):
            for sid in part:
                if sid in seen:
                    raise DataError(f"El identificador '{sid}' aparece en más de una partición.")
                seen.add(sid)

    def all_ids(self) -> tuple[str, ...]:
        return self.train + self.test + self.validation

    def get(self, name: str) -> tuple[str, ...]:
        """Partición por nombre de sección: ``train``, ``test`` o ``val``."""
        parts = {"train": self.train, "test": self.test, "val": self.validation,
                 "validation": self.validation}
        if name not in parts:
            raise DataError(f"Partición '{name}' desconocida (train, test, val).")
        return parts[name]

    # ---------------- split.txt --------------------------------------------
    def to_text(self) -> str:
        lines: list[str] = []
        for name, part in zip(SECTIONS, (self.train, self.test, self.validation)):
            lines.append(f"[{name}]")
            lines.extend(part)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> DatasetSplit:
        parts: dict[str, list[str]] = {}
        current: list[str] | None = None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1]
                if name not in SECTIONS or name in parts:
                    raise TensorFormatError(f"split.txt, línea {number}: sección '{line}' inválida.")
                current = parts[name] = []
            elif current is None:
                raise TensorFormatError(f"split.txt, línea {number}: identificador fuera de sección.")
            else:
                current.append(line)
        if set(parts) != set(SECTIONS):
            raise TensorFormatError("split.txt debe contener las secciones [train] [test] [val].")
        return cls(tuple(parts["train"]), tuple(parts["test"]), tuple(parts["val"]))


def split_sizes(n: int) -> tuple[int, int, int]:
    """train = floor(0.8n), test = floor(0.1n), validación = resto."""
    train = n * 8 // 10
    test = n // 10
    return train, test, n - train - test


def split_dataset(ids: Sequence[str], seed: int) -> DatasetSplit:
    """Barajado con semilla y partición 80/10/10."""
    if len(ids) < MIN_IDS:
        raise DataError(f"Se necesitan al menos {MIN_IDS} identificadores, hay {len(ids)}.")
    if len(set(ids)) != len(ids):
        raise DataError("Hay identificadores repetidos.")
    order = SeededRng(seed).permutation(len(ids))
    shuffled = tuple(ids[i] for i in order)
    n_train, n_test, _ = split_sizes(len(ids))
    return DatasetSplit(shuffled[:n_train], shuffled[n_train:n_train + n_test],
                        shuffled[n_train + n_test:])


def write_split(path: Union[str, Path], split: DatasetSplit) -> None:
    Path(path).write_text(split.to_text(), encoding="utf-8", newline="\n")


def read_split(path: Union[str, Path]) -> DatasetSplit:
    return DatasetSplit.from_text(Path(path).read_text(encoding="utf-8"))
