from dpenet.metrics.confusion import ConfusionCounts, check_threshold, confusion_from_masks
from dpenet.metrics.scores import (dice, iou, pixel_accuracy, aggregate_mean,
                                   pool, pooled_dice, pooled_iou)

__all__ = [
    'ConfusionCounts',
    'confusion_from_masks',
    'check_threshold',

    'dice',
    'iou',
    'pixel_accuracy',
    'aggregate_mean',
    'pool',
    'pooled_dice',
    'pooled_iou',
]
