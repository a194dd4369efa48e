# builder.py
# --------------------------------------------------------------
# Red de dos codificadores paralelos con decodificador de traspuestas
# --------------------------------------------------------------
#  • Rama dual   : por etapa, DualBlock(C_prev -> C) + (bps-1) DualBlock(C -> C),
#                  después max_pool2.
#  • Rama simple : por etapa, ConvBnRelu(C_prev -> C) + bps SingleBlock(C),
#                  después max_pool2.
#  • Fusión      : concat_channels(dual, simple) si la variante es "both".
#  • Decodificador: num_stages × DecoderStage; cabeza conv 1x1 -> 1 canal (logits).
#  • Sin conexiones codificador -> decodificador.
# --------------------------------------------------------------
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..blocks import DualBlock, SingleBlock, param_count_block
from ..errors import ShapeError
from ..nn import ConvParams, Mode, concat_channels, conv2d, max_pool2
from ..nn.params import ParameterContainer, Slot
from ..tensor import SeededRng, Tensor
from .config import NetConfig
from .layers import ConvBnRelu, DecoderStage

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class SingleStage(ParameterContainer):
    lift: ConvBnRelu
    blocks: list[SingleBlock] = field(default_factory=list)

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        yield "lift", self.lift
        for i, block in enumerate(self.blocks):
            yield str(i), block

    def __call__(self, x: Tensor) -> Tensor:
        h = self.lift(x)
        for block in self.blocks:
            h = block(h)
        return max_pool2(h)


@dataclass(eq=False)
class DualStage(ParameterContainer):
    blocks: list[DualBlock] = field(default_factory=list)

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        for i, block in enumerate(self.blocks):
            yield str(i), block

    def __call__(self, x: Tensor) -> Tensor:
        h = x
        for block in self.blocks:
            h = block(h)
        return max_pool2(h)


@dataclass(eq=False)
class Network(ParameterContainer):
    cfg: NetConfig
    dual: list[DualStage]
    single: list[SingleStage]
    decoder: list[DecoderStage]
    head: ConvParams
    rng_seed: int = 0

    def _slots(self) -> Iterator[tuple[str, Slot]]:
        for i, d_stage in enumerate(self.dual):
            yield f"dual{i}", d_stage
        for i, s_stage in enumerate(self.single):
            yield f"single{i}", s_stage
        for i, dec in enumerate(self.decoder):
            yield f"decoder{i}", dec
        yield "head", self.head

    @property
    def bottleneck_channels(self) -> int:
        return self.decoder[0].up.in_ch

    def __call__(self, x: Tensor, mode: Mode = Mode.EVAL) -> Tensor:
        return forward(self, x, mode)


def build_network(cfg: NetConfig, rng: SeededRng) -> Network:
    """
    Construye la red e inicializa sus pesos desde ``rng``.

    Orden de extracción: rama dual, rama simple, decodificador, cabeza; la misma
    configuración y semilla dan parámetros idénticos bit a bit.
    """
    cfg.validate()
    bps = cfg.blocks_per_stage
    dual: list[DualStage] = []
    single: list[SingleStage] = []

    if cfg.variant.has_dual:
        c_prev = cfg.input_channels
        for width in cfg.stage_widths:
            blocks = [DualBlock.init(c_prev, width, rng)]
            blocks += [DualBlock.init(width, width, rng) for _ in range(bps - 1)]
            dual.append(DualStage(blocks))
            c_prev = width

    if cfg.variant.has_single:
        c_prev = cfg.input_channels
        for width in cfg.stage_widths:
            lift = ConvBnRelu.init(c_prev, width, rng)
            single.append(SingleStage(lift, [SingleBlock.init(width, rng) for _ in range(bps)]))
            c_prev = width

    channels = cfg.stage_widths[-1] * (int(cfg.variant.has_dual) + int(cfg.variant.has_single))
    decoder: list[DecoderStage] = []
    for _ in range(cfg.num_stages):
        stage = DecoderStage.init(channels, rng)
        decoder.append(stage)
        channels = stage.out_ch
    head = ConvParams.init(channels, 1, 1, rng)

    net = Network(cfg, dual, single, decoder, head, rng_seed=rng.seed)
    logger.info("red %s construida: %d parámetros", cfg.variant.value, count_parameters(net))
    return net


def forward(net: Network, x: Tensor, mode: Mode = Mode.TRAIN) -> Tensor:
    """Logits (N, 1, H, W) a la resolución de entrada; la sigmoide se aplica fuera."""
    cfg = net.cfg
    if x.shape.rank != 4:
        raise ShapeError(f"forward: se esperaba un lote NCHW, forma {x.shape}.")
    n, c, h, w = x.data.shape
    if c != cfg.input_channels:
        raise ShapeError(f"forward: la entrada tiene {c} canales, la red espera {cfg.input_channels}.")
    if h % cfg.divisor or w % cfg.divisor:
        raise ShapeError(f"forward: {h}x{w} no es divisible por {cfg.divisor}.")

    net.set_mode(mode)
    features: Optional[Tensor] = None
    if net.dual:
        h_dual = x
        for d_stage in net.dual:
            h_dual = d_stage(h_dual)
        features = h_dual
    if net.single:
        h_single = x
        for s_stage in net.single:
            h_single = s_stage(h_single)
        features = h_single if features is None else concat_channels(features, h_single)
    assert features is not None

    for dec in net.decoder:
        features = dec(features)
    return conv2d(features, net.head)


def count_parameters(net: Network) -> int:
    """Suma de los bloques residuales, las capas de ajuste, el decodificador y la cabeza."""
    total = 0
    for d_stage in net.dual:
        total += sum(param_count_block(b) for b in d_stage.blocks)
    for s_stage in net.single:
        total += s_stage.lift.parameter_count()
        total += sum(param_count_block(b) for b in s_stage.blocks)
    total += sum(dec.parameter_count() for dec in net.decoder)
    return total + net.head.parameter_count()


def parameter_breakdown(net: Network) -> list[tuple[str, int]]:
    """Recuento por capa (nombre jerárquico del contenedor, escalares entrenables)."""
    rows: list[tuple[str, int]] = []
    for name, slot in net._slots():
        if isinstance(slot, (DualStage, SingleStage)):
            for sub, child in slot._slots():
                assert isinstance(child, ParameterContainer)
                rows.append((f"{name}.{sub}", child.parameter_count()))
        elif isinstance(slot, ParameterContainer):
            rows.append((name, slot.parameter_count()))
    return rows
