"""
connecte.training.sampling

Corruption samplers and batch construction. A negative differs from its positive in exactly
one slot; the replacement is uniform over every other symbol of that slot's vocabulary.
False negatives (corruptions that happen to be true elsewhere) are not filtered.
"""

from collections import namedtuple

from connecte.exceptions import ConfigurationError

Batch = namedtuple("Batch", ["positives", "negatives"])


def _other_id(original, n, rng):
    """Uniform draw from range(n) excluding ``original``"""
    draw = int(rng.integers(n - 1))
    return draw + 1 if draw >= original else draw


def _require(n, what):
    if n < 2:
        raise ConfigurationError(f"corruption needs at least 2 {what}, got {n}")


def corrupt_triple(triple, rng, n_ent):
    """Replace the head (probability 1/2) or the tail by a different entity"""
    _require(n_ent, "entities")
    if rng.random() < 0.5:
        return triple._replace(head=_other_id(triple.head, n_ent, rng))
    return triple._replace(tail=_other_id(triple.tail, n_ent, rng))


def corrupt_assertion(assertion, rng, n_ent, n_type):
    """Replace the entity (probability 1/2) or the type"""
    _require(n_ent, "entities")
    _require(n_type, "types")
    if rng.random() < 0.5:
        return assertion._replace(entity=_other_id(assertion.entity, n_ent, rng))
    return assertion._replace(type=_other_id(assertion.type, n_type, rng))


def corrupt_type_triple(type_triple, rng, n_type):
    """Replace the head type (probability 1/2) or the tail type"""
    _require(n_type, "types")
    if rng.random() < 0.5:
        return type_triple._replace(head_type=_other_id(type_triple.head_type, n_type, rng))
    return type_triple._replace(tail_type=_other_id(type_triple.tail_type, n_type, rng))


def iter_batches(records, corrupt, batch_size, rng, neg_per_pos=1):
    """
    Shuffle ``records`` and yield Batch tuples of at most ``batch_size`` positives, each
    positive repeated ``neg_per_pos`` times against independent corruptions.

    Args:
        corrupt: callable(record, rng) -> corrupted record
    """
    order = rng.permutation(len(records))
    for start in range(0, len(order), batch_size):
        chunk = order[start : start + batch_size]
        positives = [records[i] for i in chunk for _ in range(neg_per_pos)]
        yield Batch(positives, [corrupt(record, rng) for record in positives])
