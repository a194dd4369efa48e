from dpenet.network.config import NetConfig, NetVariant
from dpenet.network.layers import ConvBnRelu, DecoderStage
from dpenet.network.builder import (Network, DualStage, SingleStage, build_network, forward,
                                    count_parameters, parameter_breakdown)
from dpenet.network.checkpoint import save_checkpoint, load_checkpoint
from dpenet.network.variants import ABLATION_VARIANTS, AblationVariant, get_variant

__all__ = [
    'NetConfig',
    'NetVariant',
    'ConvBnRelu',
    'DecoderStage',
    'Network',
    'DualStage',
    'SingleStage',

    'build_network',
    'forward',
    'count_parameters',
    'parameter_breakdown',
    'save_checkpoint',
    'load_checkpoint',

    'ABLATION_VARIANTS',
    'AblationVariant',
    'get_variant',
]
