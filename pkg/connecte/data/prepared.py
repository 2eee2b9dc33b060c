"""
connecte.data.prepared

The prepared data directory written by ``connecte prepare`` and read by every later command:

    triples.tsv, types.tsv, type_triples.tsv      training D, H, Z (surface forms)
    vocab_{entity,relation,type}.tsv              training vocabularies
    valid_types.tsv, test_types.tsv               optional copies of the evaluation splits
"""

import logging
import os
import shutil
from collections import namedtuple

from connecte.const import (
    TEST_TYPES_FILE,
    TRIPLES_FILE,
    TYPE_TRIPLES_FILE,
    TYPES_FILE,
    VALID_TYPES_FILE,
    VOCAB_FILE,
)
from connecte.data.kb import build_kb, dataset_stats
from connecte.data.loaders import (
    load_triples,
    load_type_assertions,
    load_type_triples,
    write_triples,
    write_type_assertions,
    write_type_triples,
)
from connecte.data.records import Vocabularies
from connecte.data.type_triples import count_type_triples, filter_type_triples
from connecte.data.vocab import Vocab

logger = logging.getLogger(__name__)

PreparedData = namedtuple("PreparedData", ["kb", "vocabs", "eval_vocabs"])
PrepareSummary = namedtuple(
    "PrepareSummary", ["expansions", "unique", "surviving", "min_count", "stats"]
)

_KINDS = ("entity", "relation", "type")


def _require_files(*paths):
    for path in paths:
        if path is not None and not os.path.isfile(path):
            raise FileNotFoundError(2, "No such file", path)


def prepare_dataset(
    triples_path, types_path, out_dir, min_count=1, valid_path=None, test_path=None
):
    """
    Build vocabularies and the type-triple set from raw training files and write a prepared
    data directory

    Every input is read and validated before anything is written to ``out_dir``.
    Vocabularies are grown from the training triples first, then the training assertions.

    Returns:
        PrepareSummary
    """
    _require_files(triples_path, types_path, valid_path, test_path)
    vocabs = Vocabularies(Vocab("entity"), Vocab("relation"), Vocab("type"))
    triples = load_triples(triples_path, vocabs.entity, vocabs.relation, grow=True)
    assertions = load_type_assertions(types_path, vocabs.entity, vocabs.type, grow=True)
    # evaluation splits are only parsed here, their unseen names stay out of the vocabularies
    for path in (valid_path, test_path):
        if path is not None:
            load_type_assertions(path, vocabs.entity.copy(), vocabs.type.copy(), grow=True)

    kb = build_kb(triples, assertions, vocabs=vocabs)
    counts = count_type_triples(kb.triples, kb.types_of)
    type_triples = filter_type_triples(counts, min_count)
    kb = build_kb(triples, assertions, type_triples=type_triples, vocabs=vocabs)

    os.makedirs(out_dir, exist_ok=True)
    for kind, vocab in zip(_KINDS, vocabs):
        vocab.dump(os.path.join(out_dir, VOCAB_FILE.format(kind=kind)))
    write_triples(os.path.join(out_dir, TRIPLES_FILE), triples, vocabs.entity, vocabs.relation)
    write_type_assertions(os.path.join(out_dir, TYPES_FILE), assertions, vocabs.entity, vocabs.type)
    write_type_triples(
        os.path.join(out_dir, TYPE_TRIPLES_FILE), type_triples, vocabs.type, vocabs.relation
    )
    for path, name in ((valid_path, VALID_TYPES_FILE), (test_path, TEST_TYPES_FILE)):
        if path is not None:
            shutil.copyfile(path, os.path.join(out_dir, name))

    summary = PrepareSummary(
        expansions=sum(counts.values()),
        unique=len(counts),
        surviving=len(type_triples),
        min_count=min_count,
        stats=dataset_stats(kb),
    )
    logger.info("Prepared %r in %s", kb, out_dir)
    return summary


def load_vocabularies(directory):
    return Vocabularies(
        *(Vocab.load(os.path.join(directory, VOCAB_FILE.format(kind=k)), k) for k in _KINDS)
    )


def _optional(path, default):
    if path is not None:
        return path
    return default if os.path.isfile(default) else None


def load_prepared(data_dir, vocabs=None, valid_path=None, test_path=None):
    """
    Load a prepared data directory into a KnowledgeBase

    Args:
        vocabs: training vocabularies to resolve against (default: the directory's own)
        valid_path, test_path: evaluation splits; default to the directory's copies if present.
            Names unseen in training are added to ``eval_vocabs`` only, so their ids fall
            outside the trained parameter matrices.
    Returns:
        PreparedData(kb, vocabs, eval_vocabs)
    """
    if vocabs is None:
        vocabs = load_vocabularies(data_dir)
    triples = load_triples(os.path.join(data_dir, TRIPLES_FILE), vocabs.entity, vocabs.relation)
    assertions = load_type_assertions(
        os.path.join(data_dir, TYPES_FILE), vocabs.entity, vocabs.type
    )
    type_triples = load_type_triples(
        os.path.join(data_dir, TYPE_TRIPLES_FILE), vocabs.type, vocabs.relation
    )
    eval_vocabs = Vocabularies(*(vocab.copy() for vocab in vocabs))
    splits = []
    for path, default in ((valid_path, VALID_TYPES_FILE), (test_path, TEST_TYPES_FILE)):
        path = _optional(path, os.path.join(data_dir, default))
        if path is None:
            splits.append([])
        else:
            splits.append(
                load_type_assertions(path, eval_vocabs.entity, eval_vocabs.type, grow=True)
            )
    kb = build_kb(triples, assertions, splits[0], splits[1], type_triples, vocabs=vocabs)
    return PreparedData(kb, vocabs, eval_vocabs)
