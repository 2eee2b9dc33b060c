"""
connecte.model
"""

from .checkpoint import (
    Checkpoint,
    checkpoint_digest,
    load_checkpoint,
    read_matrix,
    save_checkpoint,
    write_matrix,
)
from .config import PRESETS, TrainConfig
from .params import ModelParams, init_bound, init_params, normalize_entities
from .scoring import (
    composite_scores,
    e2t_scores,
    score_composite,
    score_e2t,
    score_pair,
    score_transe,
    score_trt,
    type_scores,
)

__all__ = [
    "Checkpoint",
    "ModelParams",
    "PRESETS",
    "TrainConfig",
    "checkpoint_digest",
    "composite_scores",
    "e2t_scores",
    "init_bound",
    "init_params",
    "load_checkpoint",
    "normalize_entities",
    "read_matrix",
    "save_checkpoint",
    "score_composite",
    "score_e2t",
    "score_pair",
    "score_transe",
    "score_trt",
    "type_scores",
    "write_matrix",
]
