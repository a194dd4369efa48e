from dpenet.nn.params import Mode, ParameterContainer, ConvParams, BatchNormParams
from dpenet.nn.ops import (conv2d, conv_transpose2d, conv2d_stride2, batch_norm,
                           relu, sigmoid, max_pool2, concat_channels, bce_with_logits)

__all__ = [
    'Mode',
    'ParameterContainer',
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
]
