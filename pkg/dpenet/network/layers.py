from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..nn import BatchNormParams, ConvParams, batch_norm, conv2d, conv_transpose2d, relu
from ..nn.params import ParameterContainer, Slot
from ..tensor import SeededRng, Tensor


@dataclass(eq=False)
class ConvBnRelu(ParameterContainer):
    """conv 3x3 -> BN -> ReLU, sin atajo. Cambia el ancho de canales."""
    conv: ConvParams
    bn: BatchNormParams

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "conv", self.conv
        yield "bn", self.bn

    @classmethod
    def init(cls, in_ch: int, out_ch: int, rng: SeededRng) -> ConvBnRelu:
        return cls(ConvParams.init(in_ch, out_ch, 3, rng), BatchNormParams.init(out_ch))

    def __call__(self, x: Tensor) -> Tensor:
        return relu(batch_norm(conv2d(x, self.conv), self.bn))


def decoder_width(in_ch: int) -> int:
    """Cada etapa del decodificador divide los canales entre dos (mínimo 1)."""
    return max(1, in_ch // 2)


@dataclass(eq=False)
class DecoderStage(ParameterContainer):
    """Traspuesta 2x2/2 (C -> C/2, resolución x2) seguida de conv 3x3+BN+ReLU."""
    up: ConvParams
    refine: ConvBnRelu

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "up", self.up
        yield "refine", self.refine

    @property
    def out_ch(self) -> int:
        return self.refine.conv.out_ch

    @classmethod
    def init(cls, in_ch: int, rng: SeededRng) -> DecoderStage:
        out_ch = decoder_width(in_ch)
        up = ConvParams.init(in_ch, out_ch, 2, rng, transposed=True)
        return cls(up, ConvBnRelu.init(out_ch, out_ch, rng))

    def __call__(self, x: Tensor) -> Tensor:
        return self.refine(conv_transpose2d(x, self.up))
