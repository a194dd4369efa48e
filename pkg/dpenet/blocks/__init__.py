from dpenet.blocks.dual_block import DualBlock, Shortcut, dual_block_forward
from dpenet.blocks.single_block import SingleBlock, single_block_forward
from dpenet.blocks.counting import param_count_block

__all__ = [
    'DualBlock',
    'Shortcut',
    'SingleBlock',

    'dual_block_forward',
    'single_block_forward',
    'param_count_block',
]
