"""Shared fixtures: hand-built and random knowledge bases, parameters and TSV writers"""

import numpy as np
import pytest

from connecte.data import (
    Triple,
    TypeAssertion,
    Vocab,
    Vocabularies,
    build_kb,
    generate_type_triples,
)
from connecte.model import ModelParams


def synthetic_vocabs(n_ent, n_rel, n_type):
    return Vocabularies(
        Vocab("entity", [f"e{i}" for i in range(n_ent)]),
        Vocab("relation", [f"r{i}" for i in range(n_rel)]),
        Vocab("type", [f"/t/{i}" for i in range(n_type)]),
    )


def make_kb(triples, assertions, n_ent, n_rel, n_type, valid=(), test=(), min_count=1):
    """KB with type triples generated from the training assertions"""
    vocabs = synthetic_vocabs(n_ent, n_rel, n_type)
    base = build_kb(triples, assertions, vocabs=vocabs)
    type_triples = generate_type_triples(base.triples, base.types_of, min_count)
    return build_kb(triples, assertions, valid, test, type_triples, vocabs=vocabs)


def make_random_kb(seed, n_ent=30, n_rel=3, n_type=8, n_triples=40, max_types=2, n_test=8):
    rng = np.random.default_rng(seed)
    triples = sorted(
        {
            Triple(int(h), int(r), int(t))
            for h, r, t in zip(
                rng.integers(n_ent, size=n_triples),
                rng.integers(n_rel, size=n_triples),
                rng.integers(n_ent, size=n_triples),
            )
        }
    )
    assertions = []
    for entity in range(n_ent):
        count = int(rng.integers(1, max_types + 1))
        for type_ in rng.choice(n_type, size=count, replace=False):
            assertions.append(TypeAssertion(entity, int(type_)))
    order = rng.permutation(len(assertions))
    test = [assertions[i] for i in order[:n_test]]
    train = [assertions[i] for i in order[n_test:]]
    return make_kb(triples, train, n_ent, n_rel, n_type, test=test)


def make_random_params(kb, kappa=6, ell=4, seed=0, scale=0.5):
    rng = np.random.default_rng(seed)
    return ModelParams(
        E=rng.normal(scale=scale, size=(kb.n_entities, kappa)),
        T=rng.normal(scale=scale, size=(kb.n_types, ell)),
        R_star=rng.normal(scale=scale, size=(kb.n_relations, kappa)),
        R_circ=rng.normal(scale=scale, size=(kb.n_relations, ell)),
        M=rng.normal(scale=scale, size=(ell, kappa)),
    )


def make_planted_kb(seed, n_ent=300, n_types=8, extra_per_relation=100, n_held_out=20):
    """
    Entities split into disjoint type clusters; every relation links exactly one
    (head type, tail type) pair and every entity takes part in at least one triple.
    ``n_held_out`` entities lose their only type assertion, which becomes the test set.
    """
    rng = np.random.default_rng(seed)
    cluster_of = np.arange(n_ent) % n_types
    members = [np.flatnonzero(cluster_of == c) for c in range(n_types)]
    links = [(0, 1), (2, 3), (4, 5), (6, 7), (1, 2), (5, 6)]
    triples = set()
    for rel, (head_type, tail_type) in enumerate(links):
        for head in members[head_type]:
            triples.add(Triple(int(head), rel, int(rng.choice(members[tail_type]))))
        for tail in members[tail_type]:
            triples.add(Triple(int(rng.choice(members[head_type])), rel, int(tail)))
        heads = rng.choice(members[head_type], size=extra_per_relation)
        tails = rng.choice(members[tail_type], size=extra_per_relation)
        triples.update(Triple(int(h), rel, int(t)) for h, t in zip(heads, tails))
    assertions = [TypeAssertion(e, int(cluster_of[e])) for e in range(n_ent)]
    held_out = set(rng.choice(n_ent, size=n_held_out, replace=False).tolist())
    train = [a for a in assertions if a.entity not in held_out]
    test = [a for a in assertions if a.entity in held_out]
    return make_kb(sorted(triples), train, n_ent, len(links), n_types, test=test)


@pytest.fixture
def tiny_kb():
    """
    4 entities, 2 relations, 3 types

        0 -r0-> 1, 0 -r1-> 2, 3 -r0-> 0
        types: 0:{0}  1:{1}  2:{1, 2}  3:{2}
    """
    triples = [Triple(0, 0, 1), Triple(0, 1, 2), Triple(3, 0, 0)]
    assertions = [
        TypeAssertion(0, 0),
        TypeAssertion(1, 1),
        TypeAssertion(2, 1),
        TypeAssertion(2, 2),
        TypeAssertion(3, 2),
    ]
    return make_kb(triples, assertions, 4, 2, 3)


@pytest.fixture
def random_kb():
    return make_random_kb(seed=7)


@pytest.fixture
def write_tsv(tmp_path):
    """Write rows (tuples of strings) as a TSV file under tmp_path and return its path"""

    def _write(name, rows):
        path = tmp_path / name
        path.write_text("".join("\t".join(row) + "\n" for row in rows), encoding="utf-8")
        return str(path)

    return _write
