"""
connecte.evaluation
"""

from .classification import (
    ClassifyReport,
    LabeledPair,
    PRPoint,
    candidate_thresholds,
    classify,
    classify_scores,
    make_classification_split,
)
from .ranking import (
    RankedPair,
    RankReport,
    aggregate_ranks,
    evaluate_typing,
    fair_rank,
    filter_mask,
    predict_topk,
    rank_type,
)
from .reports import write_classify_report, write_typing_report

__all__ = [
    "ClassifyReport",
    "LabeledPair",
    "PRPoint",
    "RankReport",
    "RankedPair",
    "aggregate_ranks",
    "candidate_thresholds",
    "classify",
    "classify_scores",
    "evaluate_typing",
    "fair_rank",
    "filter_mask",
    "make_classification_split",
    "predict_topk",
    "rank_type",
    "write_classify_report",
    "write_typing_report",
]
