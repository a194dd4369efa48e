from dpenet.train.sgdm import SgdmState, sgdm_step
from dpenet.train.evaluation import (EvalReport, evaluate, evaluate_predictions, predict,
                                     report_from_counts)
from dpenet.train.loop import TrainConfig, TrainingLog, train_loop, train_step, TRAIN_KEYS

__all__ = [
    'SgdmState',
    'TrainConfig',
    'TrainingLog',
    'EvalReport',

    'sgdm_step',
    'train_step',
    'train_loop',
    'evaluate',
    'evaluate_predictions',
    'predict',
    'report_from_counts',
    'TRAIN_KEYS',
]
