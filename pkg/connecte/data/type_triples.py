"""
connecte.data.type_triples

Synthesis of (head type, relation, tail type) facts from entity triples
"""

import logging
from collections import Counter

from connecte.data.records import TypeTriple
from connecte.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_NO_TYPES = frozenset()


def count_type_triples(triples, types_of):
    """
    Count every type-level expansion of ``triples``

    Each triple (e, r, e~) contributes one occurrence of (t_h, r, t_t) for every pair in
    types_of[e] x types_of[e~]. Entities without types contribute nothing.

    Returns:
        collections.Counter keyed by TypeTriple
    """
    counts = Counter()
    for head, rel, tail in triples:
        head_types = types_of.get(head, _NO_TYPES)
        tail_types = types_of.get(tail, _NO_TYPES)
        for t_h in head_types:
            for t_t in tail_types:
                counts[TypeTriple(t_h, rel, t_t)] += 1
    return counts


def filter_type_triples(counts, min_count):
    """Deduplicated candidates seen at least ``min_count`` times, in (t_h, r, t_t) id order"""
    if min_count < 1:
        raise ConfigurationError(f"min_count must be a positive integer, got {min_count}")
    return sorted(tt for tt, count in counts.items() if count >= min_count)


def generate_type_triples(triples, types_of, min_count=1):
    """
    Build the type-triple training set

    Args:
        triples: training triples (D)
        types_of: entity id -> set of type ids, from the training assertions only
        min_count: 1 keeps every generated type triple (full set), 2 drops the ones
            generated exactly once (discarded set)
    Returns:
        sorted list of TypeTriple
    """
    counts = count_type_triples(triples, types_of)
    kept = filter_type_triples(counts, min_count)
    logger.info(
        "Type triples: %d expansions, %d unique, %d with count >= %d",
        sum(counts.values()),
        len(counts),
        len(kept),
        min_count,
    )
    return kept
