"""
dpenet: Red de segmentación de doble codificador paralelo, entrenable en CPU.

Provee tensores con autodiferenciación en modo inverso, las capas y bloques
residuales de la red, entrenamiento SGDM, métricas Dice/IoU y datos sintéticos.
"""
from dpenet._config import Config
from dpenet.errors import (DpeNetError, ShapeError, NonFiniteError, GraphError, ConfigError,
                           TensorFormatError, CheckpointError, DataError, DivergenceError,
                           GradientCheckError)
from dpenet.tensor import (Shape, Tensor, SeededRng, Tape, AutodiffGraph, Gradients,
                           tensor_new, zeros, ones, stack, backward, finite_difference_check,
                           elementwise_add, elementwise_mul, scale, reduce_mean,
                           read_tensor, write_tensor)
from dpenet.nn import (Mode, ConvParams, BatchNormParams, conv2d, conv_transpose2d,
                       conv2d_stride2, batch_norm, relu, sigmoid, max_pool2,
                       concat_channels, bce_with_logits)
from dpenet.blocks import (DualBlock, SingleBlock, dual_block_forward, single_block_forward,
                           param_count_block)
from dpenet.network import (NetConfig, NetVariant, Network, build_network, forward,
                            count_parameters, save_checkpoint, load_checkpoint, ABLATION_VARIANTS)
from dpenet.metrics import (ConfusionCounts, confusion_from_masks, dice, iou, pixel_accuracy,
                            aggregate_mean)
from dpenet.data import (Sample, DatasetSplit, generate_synthetic_dataset, split_dataset,
                         read_pgm, write_pgm, read_ppm, write_ppm, resize_bilinear, resize_nearest)
from dpenet.train import (SgdmState, TrainConfig, TrainingLog, EvalReport, sgdm_step,
                          train_loop, evaluate)

__all__ = [
    'Config',

    'DpeNetError',
    'ShapeError',
    'NonFiniteError',
    'GraphError',
    'ConfigError',
    'TensorFormatError',
    'CheckpointError',
    'DataError',
    'DivergenceError',
    'GradientCheckError',

    'Shape',
    'Tensor',
    'SeededRng',
    'Tape',
    'AutodiffGraph',
    'Gradients',
    'tensor_new',
    'zeros',
    'ones',
    'stack',
    'backward',
    'finite_difference_check',
    'elementwise_add',
    'elementwise_mul',
    'scale',
    'reduce_mean',
    'read_tensor',
    'write_tensor',

    'Mode',
    'ConvParams',
    'BatchNormParams',
    'conv2d',
    'conv_transpose2d',
    'conv2d_stride2',
    'batch_norm',
    'relu',
    'sigmoid',
    'max_pool2',
    'concat_channels',
    'bce_with_logits',

    'DualBlock',
    'SingleBlock',
    'dual_block_forward',
    'single_block_forward',
    'param_count_block',

    'NetConfig',
    'NetVariant',
    'Network',
    'build_network',
    'forward',
    'count_parameters',
    'save_checkpoint',
    'load_checkpoint',
    'ABLATION_VARIANTS',

    'ConfusionCounts',
    'confusion_from_masks',
    'dice',
    'iou',
    'pixel_accuracy',
    'aggregate_mean',

    'Sample',
    'DatasetSplit',
    'generate_synthetic_dataset',
    'split_dataset',
    'read_pgm',
    'write_pgm',
    'read_ppm',
    'write_ppm',
    'resize_bilinear',
    'resize_nearest',

    'SgdmState',
    'TrainConfig',
    'TrainingLog',
    'EvalReport',
    'sgdm_step',
    'train_loop',
    'evaluate',
]
