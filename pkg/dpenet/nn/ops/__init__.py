from dpenet.nn.ops.conv import conv2d, conv_transpose2d, conv2d_stride2
from dpenet.nn.ops.norm import batch_norm
from dpenet.nn.ops.activation import relu, sigmoid
from dpenet.nn.ops.pooling import max_pool2, concat_channels
from dpenet.nn.ops.loss import bce_with_logits

__all__ = [
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
