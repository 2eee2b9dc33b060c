"""
connecte.training
"""

from .adagrad import AdagradState, adagrad_update
from .objectives import (
    J1,
    J2,
    J3,
    OBJECTIVES,
    EntityTypeObjective,
    Objective,
    TransEObjective,
    TypeTripleObjective,
    hinge,
    step_j1,
    step_j2,
    step_j3,
)
from .sampling import Batch, corrupt_assertion, corrupt_triple, corrupt_type_triple, iter_batches
from .trainer import LossRecord, Trainer, TrainResult, train

__all__ = [
    "AdagradState",
    "Batch",
    "EntityTypeObjective",
    "J1",
    "J2",
    "J3",
    "LossRecord",
    "OBJECTIVES",
    "Objective",
    "TrainResult",
    "Trainer",
    "TransEObjective",
    "TypeTripleObjective",
    "adagrad_update",
    "corrupt_assertion",
    "corrupt_triple",
    "corrupt_type_triple",
    "hinge",
    "iter_batches",
    "step_j1",
    "step_j2",
    "step_j3",
    "train",
]
