"""
connecte.data.kb

The indexed, read-only knowledge base every later stage works from
"""

from collections import defaultdict, namedtuple
from types import MappingProxyType

import numpy as np
from cached_property import cached_property

from connecte.data.records import Triple, TypeAssertion, TypeTriple
from connecte.exceptions import DataError

DatasetStats = namedtuple(
    "DatasetStats",
    [
        "entities",
        "relations",
        "types",
        "triples",
        "assertions",
        "type_triples",
        "typed_entities",
        "typed_without_triples",
    ],
)

_EMPTY = frozenset()


def _freeze(mapping):
    return MappingProxyType({key: frozenset(value) for key, value in mapping.items()})


class KnowledgeBase:
    """
    Training triples (D), training type assertions (H), type triples (Z) and the indexes
    derived from them.

    Indexes:
        types_of: entity -> frozenset of types from the training assertions
        out_edges[e]: tuple of (rel, tail) for triples where e is the head
        in_edges[e]: tuple of (rel, head) for triples where e is the tail
        true_types_all: entity -> frozenset of types over train+valid+test assertions

    A built KnowledgeBase is never mutated and may be shared between threads.
    """

    def __init__(
        self,
        triples,
        assertions,
        type_triples,
        n_entities,
        n_relations,
        n_types,
        valid_assertions=(),
        test_assertions=(),
        vocabs=None,
    ):
        self.triples = tuple(Triple(*t) for t in triples)
        self.assertions = tuple(TypeAssertion(*a) for a in assertions)
        self.type_triples = tuple(TypeTriple(*tt) for tt in type_triples)
        self.valid_assertions = tuple(TypeAssertion(*a) for a in valid_assertions)
        self.test_assertions = tuple(TypeAssertion(*a) for a in test_assertions)
        self.n_entities = n_entities
        self.n_relations = n_relations
        self.n_types = n_types
        self.vocabs = vocabs
        self._check_ids()

        types_of = defaultdict(set)
        for entity, type_ in self.assertions:
            types_of[entity].add(type_)
        self.types_of = _freeze(types_of)

        true_types = defaultdict(set)
        for entity, type_ in self.assertions + self.valid_assertions + self.test_assertions:
            true_types[entity].add(type_)
        self.true_types_all = _freeze(true_types)

        out_edges = [[] for _ in range(n_entities)]
        in_edges = [[] for _ in range(n_entities)]
        for head, rel, tail in self.triples:
            out_edges[head].append((rel, tail))
            in_edges[tail].append((rel, head))
        self.out_edges = tuple(tuple(edges) for edges in out_edges)
        self.in_edges = tuple(tuple(edges) for edges in in_edges)

    def _check_ids(self):
        # Valid/test assertions may reference ids beyond the training vocabularies;
        # evaluation skips those pairs.
        ent, rel, typ = self.n_entities, self.n_relations, self.n_types
        checks = [(self.triples, (ent, rel, ent)), (self.assertions, (ent, typ))]
        checks.append((self.type_triples, (typ, rel, typ)))
        for records, limits in checks:
            for record in records:
                if not all(0 <= idx < limit for idx, limit in zip(record, limits)):
                    raise DataError(f"{record} has an id outside its vocabulary")

    def types(self, entity):
        """Training types of ``entity`` (empty for untyped entities)"""
        return self.types_of.get(entity, _EMPTY)

    def true_types(self, entity):
        return self.true_types_all.get(entity, _EMPTY)

    def tail_type_pairs(self, entity):
        """
        Multiset P of (relation, tail type) pairs: one pair per out-edge (r, e~) of
        ``entity`` and per training type of e~
        """
        return [(rel, t) for rel, tail in self.out_edges[entity] for t in self.types(tail)]

    def head_type_pairs(self, entity):
        """Multiset Q of (relation, head type) pairs, the in-edge counterpart of P"""
        return [(rel, t) for rel, head in self.in_edges[entity] for t in self.types(head)]

    @cached_property
    def triple_array(self):
        return np.asarray(self.triples, dtype=np.int64).reshape(-1, 3)

    @cached_property
    def assertion_array(self):
        return np.asarray(self.assertions, dtype=np.int64).reshape(-1, 2)

    def __repr__(self):
        return "<KnowledgeBase entities={} relations={} types={} D={} H={} Z={}>".format(
            self.n_entities,
            self.n_relations,
            self.n_types,
            len(self.triples),
            len(self.assertions),
            len(self.type_triples),
        )


def _max_id(records, field):
    return max((getattr(r, field) for r in records), default=-1)


def build_kb(
    train_triples,
    train_assertions,
    valid_assertions=(),
    test_assertions=(),
    type_triples=(),
    vocabs=None,
):
    """
    Assemble a KnowledgeBase from id-resolved records

    Sizes come from ``vocabs`` (a connecte.data.Vocabularies) when given, otherwise from the
    largest id seen in the training records. When vocabularies are given, they should be the
    training vocabularies; valid/test ids beyond them are kept only for filtering.
    """
    triples = [Triple(*t) for t in train_triples]
    assertions = [TypeAssertion(*a) for a in train_assertions]
    type_triples = [TypeTriple(*tt) for tt in type_triples]
    if vocabs is not None:
        n_entities, n_relations, n_types = (len(v) for v in vocabs)
    else:
        n_entities = 1 + max(
            _max_id(triples, "head"), _max_id(triples, "tail"), _max_id(assertions, "entity")
        )
        n_relations = 1 + max(_max_id(triples, "rel"), _max_id(type_triples, "rel"))
        n_types = 1 + max(
            _max_id(assertions, "type"),
            _max_id(type_triples, "head_type"),
            _max_id(type_triples, "tail_type"),
        )
    return KnowledgeBase(
        triples,
        assertions,
        type_triples,
        n_entities=n_entities,
        n_relations=n_relations,
        n_types=n_types,
        valid_assertions=valid_assertions,
        test_assertions=test_assertions,
        vocabs=vocabs,
    )


def dataset_stats(kb):
    """Vocabulary and record counts, plus typed entities that occur in no triple"""
    in_triples = np.union1d(kb.triple_array[:, 0], kb.triple_array[:, 2])
    typed = np.unique(kb.assertion_array[:, 0])
    return DatasetStats(
        entities=kb.n_entities,
        relations=kb.n_relations,
        types=kb.n_types,
        triples=len(kb.triples),
        assertions=len(kb.assertions),
        type_triples=len(kb.type_triples),
        typed_entities=int(typed.size),
        typed_without_triples=int(np.setdiff1d(typed, in_triples).size),
    )
