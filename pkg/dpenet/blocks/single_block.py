from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..errors import ShapeError
from ..nn import BatchNormParams, ConvParams, batch_norm, conv2d, relu
from ..nn.params import ParameterContainer, Slot
from ..tensor import SeededRng, Tensor, elementwise_add


@dataclass(eq=False)
class SingleBlock(ParameterContainer):
    """Bloque residual de una convolución 3x3 con atajo identidad (C -> C)."""
    conv: ConvParams
    bn: BatchNormParams

    def __post_init__(self) -> None:
        if self.conv.kernel != 3 or self.conv.in_ch != self.conv.out_ch:
            raise ShapeError(
                f"SingleBlock: se requiere conv 3x3 C->C, hay {self.conv.in_ch}->{self.conv.out_ch}."
            )

    @property
    def channels(self) -> int:
        return self.conv.in_ch

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "conv", self.conv
        yield "bn", self.bn

    @classmethod
    def init(cls, channels: int, rng: SeededRng) -> SingleBlock:
        return cls(ConvParams.init(channels, channels, 3, rng), BatchNormParams.init(channels))

    def __call__(self, x: Tensor) -> Tensor:
        return single_block_forward(x, self)


def single_block_forward(x: Tensor, b: SingleBlock) -> Tensor:
    """I_{k+1} = ReLU(F·I_1 + I_1)."""
    if x.shape.rank != 4 or x.data.shape[1] != b.channels:
        raise ShapeError(f"SingleBlock: entrada {x.shape}, se esperaban {b.channels} canales.")
    return relu(elementwise_add(batch_norm(conv2d(x, b.conv), b.bn), x))
