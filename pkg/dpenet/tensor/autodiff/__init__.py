from dpenet.tensor.autodiff.tape import (AutodiffGraph, Gradients, Node, Tape,
                                         apply_op, backward, current_tape)
from dpenet.tensor.autodiff.gradcheck import finite_difference_check

__all__ = [
    'AutodiffGraph',
    'Gradients',
    'Node',
    'Tape',

    'apply_op',
    'backward',
    'current_tape',
    'finite_difference_check',
]
