"""
connecte.data.loaders

Readers and writers for the UTF-8 TSV formats used by datasets and prepared data directories:

    triples:       head<TAB>relation<TAB>tail
    assertions:    entity<TAB>type
    type triples:  head_type<TAB>relation<TAB>tail_type

No quoting or escaping is applied; blank lines are skipped.
"""

import logging

from connecte.data.records import Triple, TypeAssertion, TypeTriple
from connecte.exceptions import TsvParseError, VocabularyError

logger = logging.getLogger(__name__)


def iter_tsv(path, n_fields):
    """Yield (line_number, fields) for every non-blank line of ``path``"""
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != n_fields:
                raise TsvParseError(path, number, n_fields, len(fields))
            yield number, fields


def _load(path, record_cls, vocabs, grow):
    records = []
    for number, fields in iter_tsv(path, len(vocabs)):
        try:
            ids = [vocab.encode(name, grow=grow) for vocab, name in zip(vocabs, fields)]
        except VocabularyError as err:
            err.path, err.line_number = path, number
            raise
        records.append(record_cls(*ids))
    logger.debug("Read %d %s records from %s", len(records), record_cls.__name__, path)
    return records


def load_triples(path, entity_vocab, rel_vocab, grow=False):
    """
    Parse a triples file into ``Triple`` records

    Args:
        path: TSV file with head, relation, tail per line
        entity_vocab, rel_vocab: vocabularies to resolve against
        grow: append unseen surface forms instead of failing
    Raises:
        TsvParseError on a line without exactly three fields
        VocabularyError on an unseen symbol when ``grow`` is unset
    """
    return _load(path, Triple, (entity_vocab, rel_vocab, entity_vocab), grow)


def load_type_assertions(path, entity_vocab, type_vocab, grow=False):
    """Parse an ``entity<TAB>type`` file into ``TypeAssertion`` records, see load_triples"""
    return _load(path, TypeAssertion, (entity_vocab, type_vocab), grow)


def load_type_triples(path, type_vocab, rel_vocab, grow=False):
    return _load(path, TypeTriple, (type_vocab, rel_vocab, type_vocab), grow)


def _write(path, records, vocabs):
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write("\t".join(v.decode(i) for v, i in zip(vocabs, record)) + "\n")
    logger.debug("Wrote %d records to %s", len(records), path)


def write_triples(path, triples, entity_vocab, rel_vocab):
    _write(path, triples, (entity_vocab, rel_vocab, entity_vocab))


def write_type_assertions(path, assertions, entity_vocab, type_vocab):
    _write(path, assertions, (entity_vocab, type_vocab))


def write_type_triples(path, type_triples, type_vocab, rel_vocab):
    _write(path, type_triples, (type_vocab, rel_vocab, type_vocab))
