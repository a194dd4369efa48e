# dataset.py
# --------------------------------------------------------------
# Fuentes de muestras con registro de accesos
# --------------------------------------------------------------
#  • Directorio: images/<id>.ppm, masks/<id>.pgm, split.txt
#  • Memoria   : lista de Sample (p.ej. recién generada)
#  • Cada lectura queda anotada como (id, propósito) con propósito
#    "train" o "eval"; así se comprueba que el entrenamiento no toca
#    las particiones de test y validación.
# --------------------------------------------------------------
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from ..errors import DataError
from ..tensor import Tensor, stack
from .netpbm import read_pgm, read_ppm, write_pgm, write_ppm
from .resize import resize_bilinear, resize_nearest
from .split import DatasetSplit, read_split, write_split
from .synthetic import Sample

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class Purpose(Enum):
    TRAIN = 'train'
    EVAL = 'eval'


class SampleSource(ABC):
    """Acceso a muestras por identificador, opcionalmente redimensionadas."""

    def __init__(self, split: DatasetSplit, hw: Optional[tuple[int, int]] = None) -> None:
        self.split = split
        self.hw = hw
        self.access_log: list[tuple[str, Purpose]] = []

    @abstractmethod
    def _load(self, sid: str) -> Sample: ...

    def sample(self, sid: str, purpose: Purpose) -> Sample:
        sample = self._load(sid)
        self.access_log.append((sid, purpose))
        if self.hw is None or sample.hw == self.hw:
            return sample
        return Sample(resize_bilinear(sample.image, self.hw), resize_nearest(sample.mask, self.hw), sid)

    def batch(self, ids: Sequence[str], purpose: Purpose) -> tuple[Tensor, Tensor]:
        """Lote (N,3,H,W) de imágenes y (N,1,H,W) de máscaras."""
        if not ids:
            raise DataError("Lote vacío.")
        samples = [self.sample(sid, purpose) for sid in ids]
        return stack([s.image for s in samples]), stack([s.mask for s in samples])

    def accessed(self, purpose: Purpose) -> set[str]:
        return {sid for sid, p in self.access_log if p is purpose}


class InMemoryDataset(SampleSource):
    def __init__(self, samples: Iterable[Sample], split: DatasetSplit,
                 hw: Optional[tuple[int, int]] = None) -> None:
        super().__init__(split, hw)
        self._samples = {s.id: s for s in samples}
        unknown = [sid for sid in split.all_ids() if sid not in self._samples]
        if unknown:
            raise DataError(f"La partición nombra muestras inexistentes: {unknown[:3]}.")

    def _load(self, sid: str) -> Sample:
        try:
            return self._samples[sid]
        except KeyError:
            raise DataError(f"Muestra '{sid}' desconocida.") from None


class DirectoryDataset(SampleSource):
    """Directorio con pares PPM/PGM de igual nombre base y ``split.txt``."""

    def __init__(self, root: PathLike, hw: Optional[tuple[int, int]] = None) -> None:
        self.root = Path(root)
        split_path = self.root / "split.txt"
        if not split_path.is_file():
            raise DataError(f"No existe {split_path}.")
        super().__init__(read_split(split_path), hw)

    def image_path(self, sid: str) -> Path:
        return self.root / "images" / f"{sid}.ppm"

    def mask_path(self, sid: str) -> Path:
        return self.root / "masks" / f"{sid}.pgm"

    def _load(self, sid: str) -> Sample:
        image_path, mask_path = self.image_path(sid), self.mask_path(sid)
        for path in (image_path, mask_path):
            if not path.is_file():
                raise DataError(f"Falta el fichero {path}.")
        return Sample(read_ppm(image_path), read_pgm(mask_path), sid)


def write_dataset(root: PathLike, samples: Sequence[Sample], split: DatasetSplit) -> Path:
    """Escribe imágenes, máscaras y ``split.txt`` bajo ``root``."""
    base = Path(root)
    (base / "images").mkdir(parents=True, exist_ok=True)
    (base / "masks").mkdir(parents=True, exist_ok=True)
    for sample in samples:
        write_ppm(base / "images" / f"{sample.id}.ppm", sample.image)
        write_pgm(base / "masks" / f"{sample.id}.pgm", sample.mask)
    write_split(base / "split.txt", split)
    logger.info("dataset escrito en %s (%d muestras)", base, len(samples))
    return base
