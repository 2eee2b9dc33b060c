"""
connecte.data
"""

from .kb import DatasetStats, KnowledgeBase, build_kb, dataset_stats
from .loaders import (
    iter_tsv,
    load_triples,
    load_type_assertions,
    load_type_triples,
    write_triples,
    write_type_assertions,
    write_type_triples,
)
from .prepared import (
    PreparedData,
    PrepareSummary,
    load_prepared,
    load_vocabularies,
    prepare_dataset,
)
from .records import Triple, TypeAssertion, TypeTriple, Vocabularies
from .type_triples import count_type_triples, filter_type_triples, generate_type_triples
from .vocab import Vocab

__all__ = [
    "DatasetStats",
    "KnowledgeBase",
    "PrepareSummary",
    "PreparedData",
    "Triple",
    "TypeAssertion",
    "TypeTriple",
    "Vocab",
    "Vocabularies",
    "build_kb",
    "count_type_triples",
    "dataset_stats",
    "filter_type_triples",
    "generate_type_triples",
    "iter_tsv",
    "load_prepared",
    "load_triples",
    "load_type_assertions",
    "load_type_triples",
    "load_vocabularies",
    "prepare_dataset",
    "write_triples",
    "write_type_assertions",
    "write_type_triples",
]
