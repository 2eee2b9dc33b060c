# Imports for convenience
from importlib.metadata import PackageNotFoundError, version

from .data import KnowledgeBase, Vocab, build_kb, generate_type_triples
from .evaluation import classify, evaluate_typing, predict_topk, rank_type
from .model import ModelParams, TrainConfig, load_checkpoint, save_checkpoint
from .training import train

try:
    __version__ = version("connecte")
except PackageNotFoundError:
    __version__ = "0+unknown"

__all__ = [
    "KnowledgeBase",
    "ModelParams",
    "TrainConfig",
    "Vocab",
    "build_kb",
    "classify",
    "evaluate_typing",
    "generate_type_triples",
    "load_checkpoint",
    "predict_topk",
    "rank_type",
    "save_checkpoint",
    "train",
]
