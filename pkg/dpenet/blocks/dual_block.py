# dual_block.py
# --------------------------------------------------------------
# Bloque de convolución dual con atajo de proyección
# --------------------------------------------------------------
#  • Camino principal M: conv 1x1 -> BN -> ReLU -> conv 3x3 -> BN.
#  • Atajo S: conv 1x1 + BN si C_in != C_out, identidad en otro caso.
#  • Salida: ReLU(M + S).
# --------------------------------------------------------------
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from ..errors import ShapeError
from ..nn import BatchNormParams, ConvParams, batch_norm, conv2d, relu
from ..nn.params import ParameterContainer, Slot
from ..tensor import SeededRng, Tensor, elementwise_add


@dataclass(eq=False)
class Shortcut(ParameterContainer):
    """Proyección 1x1 + BN que iguala el número de canales."""
    conv_s: ConvParams
    bn_s: BatchNormParams

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "conv_s", self.conv_s
        yield "bn_s", self.bn_s

    def __call__(self, x: Tensor) -> Tensor:
        return batch_norm(conv2d(x, self.conv_s), self.bn_s)


@dataclass(eq=False)
class DualBlock(ParameterContainer):
    conv_a: ConvParams
    bn_a: BatchNormParams
    conv_b: ConvParams
    bn_b: BatchNormParams
    shortcut: Optional[Shortcut] = None

    def __post_init__(self) -> None:
        if self.conv_a.kernel != 1 or self.conv_b.kernel != 3:
            raise ShapeError("DualBlock: se esperaba conv_a 1x1 y conv_b 3x3.")
        if self.conv_b.in_ch != self.conv_a.out_ch or self.conv_b.out_ch != self.conv_a.out_ch:
            raise ShapeError("DualBlock: conv_b debe ser C_out -> C_out.")
        needs_projection = self.in_ch != self.out_ch
        if needs_projection != (self.shortcut is not None):
            raise ShapeError(
                f"DualBlock {self.in_ch}->{self.out_ch}: el atajo de proyección existe "
                "si y sólo si cambian los canales."
            )

    @property
    def in_ch(self) -> int:
        return self.conv_a.in_ch

    @property
    def out_ch(self) -> int:
        return self.conv_a.out_ch

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "conv_a", self.conv_a
        yield "bn_a", self.bn_a
        yield "conv_b", self.conv_b
        yield "bn_b", self.bn_b
        if self.shortcut is not None:
            yield "shortcut", self.shortcut

    @classmethod
    def init(cls, in_ch: int, out_ch: int, rng: SeededRng) -> DualBlock:
        conv_a = ConvParams.init(in_ch, out_ch, 1, rng)
        conv_b = ConvParams.init(out_ch, out_ch, 3, rng)
        shortcut = None
        if in_ch != out_ch:
            shortcut = Shortcut(ConvParams.init(in_ch, out_ch, 1, rng), BatchNormParams.init(out_ch))
        return cls(conv_a, BatchNormParams.init(out_ch), conv_b, BatchNormParams.init(out_ch), shortcut)

    def __call__(self, x: Tensor) -> Tensor:
        return dual_block_forward(x, self)


def dual_block_forward(x: Tensor, b: DualBlock) -> Tensor:
    """I_{k+1} = ReLU(M + S)."""
    if x.shape.rank != 4 or x.data.shape[1] != b.in_ch:
        raise ShapeError(f"DualBlock: entrada {x.shape}, se esperaban {b.in_ch} canales.")
    main = relu(batch_norm(conv2d(x, b.conv_a), b.bn_a))
    main = batch_norm(conv2d(main, b.conv_b), b.bn_b)
    skip = x if b.shortcut is None else b.shortcut(x)
    return relu(elementwise_add(main, skip))
