# gradient_suite.py
# --------------------------------------------------------------
# Batería de comprobaciones de gradiente (float64)
# --------------------------------------------------------------
#  • Una comprobación por operación diferenciable, por bloque y una
#    de la red completa en miniatura.
#  • Tensores de ≤ 64 elementos; entradas alejadas de los puntos de
#    no derivabilidad (cero de ReLU, empates de max_pool2).
#  • Las salidas no escalares se reducen con una media ponderada por
#    pesos aleatorios fijos, para que el gradiente no sea trivial.
# --------------------------------------------------------------
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .._config import Config
from ..blocks import DualBlock, SingleBlock
from ..network import NetConfig, NetVariant, build_network, forward
from ..nn import (BatchNormParams, ConvParams, Mode, batch_norm, bce_with_logits, concat_channels,
                  conv2d, conv2d_stride2, conv_transpose2d, max_pool2, relu, sigmoid)
from ..tensor import (SeededRng, Tensor, elementwise_add, elementwise_mul, finite_difference_check,
                      reduce_mean, scale)

logger = logging.getLogger(__name__)

EPS = 1e-5
OP_TOLERANCE = 1e-5
NETWORK_TOLERANCE = 1e-4
# segunda diferencia por encima de la cual una coordenada cruza una ReLU
KINK_TOLERANCE = 1e-9

Check = Callable[[SeededRng], float]


@dataclass(frozen=True, slots=True)
class GradCheckResult:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.error < self.tolerance


# ---------------------------------------------------------------------------
# Utilidades ================================================================
# ---------------------------------------------------------------------------
def _tensor(rng: SeededRng, shape: Sequence[int], std: float = 1.0) -> Tensor:
    return Tensor(rng.normal(shape, std))


def _away_from_zero(rng: SeededRng, shape: Sequence[int], margin: float = 0.1) -> Tensor:
    values = rng.normal(shape)
    return Tensor(np.sign(values) * (margin + np.abs(values)))


def _distinct(rng: SeededRng, shape: Sequence[int]) -> Tensor:
    """Valores separados al menos 0.05 entre sí: sin empates en max_pool2."""
    count = int(np.prod(shape))
    order = np.asarray(rng.permutation(count), dtype=np.float64)
    return Tensor((order * 0.05 - count * 0.025).reshape(shape))


def _weighted(y: Tensor, weights: Tensor) -> Tensor:
    return reduce_mean(elementwise_mul(y, weights))


def _conv(rng: SeededRng, in_ch: int, out_ch: int, kernel: int, transposed: bool = False) -> ConvParams:
    params = ConvParams.init(in_ch, out_ch, kernel, rng, transposed)
    bias = Tensor(rng.normal((out_ch,), 0.5), requires_grad=True)
    return ConvParams(params.weight, bias, transposed)


def _perturb_bn(rng: SeededRng, bn: BatchNormParams) -> BatchNormParams:
    c = bn.channels
    bn.gamma = Tensor(1.0 + rng.normal((c,), 0.2), requires_grad=True)
    bn.beta = Tensor(rng.normal((c,), 0.2), requires_grad=True)
    return bn


# ---------------------------------------------------------------------------
# Operaciones ===============================================================
# ---------------------------------------------------------------------------
def check_add(rng: SeededRng) -> float:
    b = _tensor(rng, (1, 2, 3, 3))
    w = _tensor(rng, (1, 2, 3, 3))
    return finite_difference_check(lambda x: _weighted(elementwise_add(x, b), w), _tensor(rng, (1, 2, 3, 3)), EPS)


def check_mean(rng: SeededRng) -> float:
    return finite_difference_check(reduce_mean, _tensor(rng, (2, 2, 2, 2)), EPS)


def check_mul_scale(rng: SeededRng) -> float:
    b = _tensor(rng, (1, 2, 2, 2))
    return finite_difference_check(lambda x: reduce_mean(scale(elementwise_mul(x, b), -1.5)),
                                   _tensor(rng, (1, 2, 2, 2)), EPS)


def _conv_checks(rng: SeededRng, kernel: int) -> float:
    p = _conv(rng, 2, 3, kernel)
    x = _tensor(rng, (1, 2, 3, 3))
    w = _tensor(rng, (1, 3, 3, 3))
    errors = [
        finite_difference_check(lambda t: _weighted(conv2d(t, p), w), x, EPS),
        finite_difference_check(lambda t: _weighted(conv2d(x, ConvParams(t, p.bias)), w), p.weight, EPS),
        finite_difference_check(lambda t: _weighted(conv2d(x, ConvParams(p.weight, t)), w), p.bias, EPS),
    ]
    return max(errors)


def check_conv1x1(rng: SeededRng) -> float:
    return _conv_checks(rng, 1)


def check_conv3x3(rng: SeededRng) -> float:
    return _conv_checks(rng, 3)


def check_conv_transpose(rng: SeededRng) -> float:
    p = _conv(rng, 2, 3, 2, transposed=True)
    x = _tensor(rng, (1, 2, 2, 2))
    w = _tensor(rng, (1, 3, 4, 4))
    errors = [
        finite_difference_check(lambda t: _weighted(conv_transpose2d(t, p), w), x, EPS),
        finite_difference_check(
            lambda t: _weighted(conv_transpose2d(x, ConvParams(t, p.bias, True)), w), p.weight, EPS),
        finite_difference_check(
            lambda t: _weighted(conv_transpose2d(x, ConvParams(p.weight, t, True)), w), p.bias, EPS),
    ]
    return max(errors)


def check_conv_stride2(rng: SeededRng) -> float:
    kernel = _tensor(rng, (2, 3, 2, 2))
    x = _tensor(rng, (1, 3, 4, 4))
    w = _tensor(rng, (1, 2, 2, 2))
    return max(
        finite_difference_check(lambda t: _weighted(conv2d_stride2(t, kernel), w), x, EPS),
        finite_difference_check(lambda t: _weighted(conv2d_stride2(x, t), w), kernel, EPS),
    )


def _bn_checks(rng: SeededRng, mode: Mode) -> float:
    bn = _perturb_bn(rng, BatchNormParams.init(2))
    if mode is Mode.EVAL:
        bn.running_mean = Tensor(rng.normal((2,), 0.3))
        bn.running_var = Tensor(0.5 + rng.uniform(0.0, 1.0, (2,)))
    bn.set_mode(mode)
    x = _tensor(rng, (2, 2, 2, 2))
    w = _tensor(rng, (2, 2, 2, 2))

    def with_gamma(t: Tensor) -> BatchNormParams:
        return BatchNormParams(t, bn.beta, bn.running_mean, bn.running_var, bn.momentum, bn.eps, mode)

    def with_beta(t: Tensor) -> BatchNormParams:
        return BatchNormParams(bn.gamma, t, bn.running_mean, bn.running_var, bn.momentum, bn.eps, mode)

    return max(
        finite_difference_check(lambda t: _weighted(batch_norm(t, bn), w), x, EPS),
        finite_difference_check(lambda t: _weighted(batch_norm(x, with_gamma(t)), w), bn.gamma, EPS),
        finite_difference_check(lambda t: _weighted(batch_norm(x, with_beta(t)), w), bn.beta, EPS),
    )


def check_batch_norm_train(rng: SeededRng) -> float:
    return _bn_checks(rng, Mode.TRAIN)


def check_batch_norm_eval(rng: SeededRng) -> float:
    return _bn_checks(rng, Mode.EVAL)


def check_relu(rng: SeededRng) -> float:
    w = _tensor(rng, (1, 2, 3, 3))
    return finite_difference_check(lambda x: _weighted(relu(x), w), _away_from_zero(rng, (1, 2, 3, 3)), EPS)


def check_sigmoid(rng: SeededRng) -> float:
    w = _tensor(rng, (1, 2, 3, 3))
    return finite_difference_check(lambda x: _weighted(sigmoid(x), w), _tensor(rng, (1, 2, 3, 3), 2.0), EPS)


def check_max_pool(rng: SeededRng) -> float:
    w = _tensor(rng, (1, 2, 2, 2))
    return finite_difference_check(lambda x: _weighted(max_pool2(x), w), _distinct(rng, (1, 2, 4, 4)), EPS)


def check_concat(rng: SeededRng) -> float:
    other = _tensor(rng, (1, 1, 2, 2))
    w = _tensor(rng, (1, 3, 2, 2))
    x = _tensor(rng, (1, 2, 2, 2))
    return max(
        finite_difference_check(lambda t: _weighted(concat_channels(t, other), w), x, EPS),
        finite_difference_check(lambda t: _weighted(concat_channels(other, t), w), x, EPS),
    )


def check_bce(rng: SeededRng) -> float:
    targets = Tensor(rng.uniform(0.0, 1.0, (1, 1, 4, 4)))
    return finite_difference_check(lambda z: bce_with_logits(z, targets), _tensor(rng, (1, 1, 4, 4), 3.0), EPS)


# ---------------------------------------------------------------------------
# Bloques y red =============================================================
# ---------------------------------------------------------------------------
def _block_param_checks(block: DualBlock | SingleBlock, x: Tensor, w: Tensor,
                        run: Callable[[Tensor], Tensor]) -> list[float]:
    errors = []
    for name, param in block.named_parameters().items():
        def f(t: Tensor, name: str = name) -> Tensor:
            block.load_state({name: t})
            return _weighted(run(x), w)
        errors.append(finite_difference_check(f, param, EPS, kink_tolerance=KINK_TOLERANCE))
        block.load_state({name: param})
    return errors


def _randomize_block(rng: SeededRng, block: DualBlock | SingleBlock) -> None:
    for name, param in block.named_parameters().items():
        if name.endswith("bias"):
            block.load_state({name: Tensor(rng.normal(param.data.shape, 0.3))})
    for child in (getattr(block, attr, None) for attr in ("bn_a", "bn_b", "bn")):
        if isinstance(child, BatchNormParams):
            _perturb_bn(rng, child)
    shortcut = getattr(block, "shortcut", None)
    if shortcut is not None:
        _perturb_bn(rng, shortcut.bn_s)


def check_dual_block(rng: SeededRng) -> float:
    block = DualBlock.init(2, 3, rng)
    _randomize_block(rng, block)
    x = _tensor(rng, (2, 2, 2, 2))
    w = _tensor(rng, (2, 3, 2, 2))
    errors = [finite_difference_check(lambda t: _weighted(block(t), w), x, EPS,
                                      kink_tolerance=KINK_TOLERANCE)]
    errors += _block_param_checks(block, x, w, block)
    return max(errors)


def check_single_block(rng: SeededRng) -> float:
    block = SingleBlock.init(2, rng)
    _randomize_block(rng, block)
    x = _tensor(rng, (2, 2, 2, 2))
    w = _tensor(rng, (2, 2, 2, 2))
    errors = [finite_difference_check(lambda t: _weighted(block(t), w), x, EPS,
                                      kink_tolerance=KINK_TOLERANCE)]
    errors += _block_param_checks(block, x, w, block)
    return max(errors)


def check_network(rng: SeededRng, fraction: float = 0.01) -> float:
    """BCE de una red en miniatura respecto a un subconjunto de cada parámetro."""
    cfg = NetConfig(NetVariant.BOTH, stage_widths=(2, 4), blocks_per_stage=1, input_hw=(4, 4))
    net = build_network(cfg, rng)
    x = _tensor(rng, (2, 3, 4, 4))
    targets = Tensor((rng.uniform(0.0, 1.0, (2, 1, 4, 4)) > 0.5).astype(np.float64))
    errors = []
    for name, param in net.named_parameters().items():
        count = max(1, int(round(fraction * param.numel)))
        indices = sorted({rng.integer(0, param.numel) for _ in range(count)})

        def f(t: Tensor, name: str = name) -> Tensor:
            net.load_state({name: t})
            return bce_with_logits(forward(net, x, Mode.TRAIN), targets)
        errors.append(finite_difference_check(f, param, EPS, indices=indices,
                                              kink_tolerance=KINK_TOLERANCE))
        net.load_state({name: param})
    return max(errors)


CHECKS: tuple[tuple[str, float, Check], ...] = (
    ("elementwise_add", OP_TOLERANCE, check_add),
    ("reduce_mean", OP_TOLERANCE, check_mean),
    ("elementwise_mul+scale", OP_TOLERANCE, check_mul_scale),
    ("conv2d_1x1", OP_TOLERANCE, check_conv1x1),
    ("conv2d_3x3", OP_TOLERANCE, check_conv3x3),
    ("conv_transpose2d", OP_TOLERANCE, check_conv_transpose),
    ("conv2d_stride2", OP_TOLERANCE, check_conv_stride2),
    ("batch_norm_train", OP_TOLERANCE, check_batch_norm_train),
    ("batch_norm_eval", OP_TOLERANCE, check_batch_norm_eval),
    ("relu", OP_TOLERANCE, check_relu),
    ("sigmoid", OP_TOLERANCE, check_sigmoid),
    ("max_pool2", OP_TOLERANCE, check_max_pool),
    ("concat_channels", OP_TOLERANCE, check_concat),
    ("bce_with_logits", OP_TOLERANCE, check_bce),
    ("dual_block", OP_TOLERANCE, check_dual_block),
    ("single_block", OP_TOLERANCE, check_single_block),
    ("network", NETWORK_TOLERANCE, check_network),
)


def run_gradient_suite(seed: int = 0, names: Optional[Iterable[str]] = None) -> list[GradCheckResult]:
    """Ejecuta las comprobaciones (todas o las nombradas) en modo float64."""
    wanted = None if names is None else set(names)
    results: list[GradCheckResult] = []
    root = SeededRng(seed)
    with Config.use_precision("float64"):
        for index, (name, tolerance, check) in enumerate(CHECKS):
            if wanted is not None and name not in wanted:
                continue
            error = check(root.derive(index))
            result = GradCheckResult(name, error, tolerance)
            logger.info("gradcheck %-22s error=%.3e %s", name, error, "ok" if result.passed else "FALLO")
            results.append(result)
    return results
