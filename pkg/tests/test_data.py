"""Unit tests for dataset loading, vocabularies and type-triple generation"""

import logging
from collections import Counter

import fauxfactory
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from connecte.data import (
    Triple,
    TypeAssertion,
    TypeTriple,
    Vocab,
    build_kb,
    count_type_triples,
    dataset_stats,
    filter_type_triples,
    generate_type_triples,
    load_prepared,
    load_triples,
    load_type_assertions,
    prepare_dataset,
    write_triples,
    write_type_assertions,
)
from connecte.exceptions import ConfigurationError, DataError, TsvParseError, VocabularyError
from tests.conftest import make_random_kb

log = logging.getLogger("connecte.tests.test_data")


@pytest.fixture
def vocabs():
    return Vocab("entity"), Vocab("relation"), Vocab("type")


def test_load_single_triple(write_tsv, vocabs):
    ent, rel, _ = vocabs
    path = write_tsv("triples.tsv", [("Barack_Obama", "born_in", "Honolulu")])
    triples = load_triples(path, ent, rel, grow=True)
    assert triples == [Triple(ent.encode("Barack_Obama"), rel.encode("born_in"), 1)]
    assert ent.names == ["Barack_Obama", "Honolulu"]


def test_load_empty_files(write_tsv, vocabs):
    ent, rel, typ = vocabs
    assert load_triples(write_tsv("triples.tsv", []), ent, rel, grow=True) == []
    assert load_type_assertions(write_tsv("types.tsv", []), ent, typ, grow=True) == []


def test_blank_lines_are_skipped(tmp_path, vocabs):
    ent, rel, _ = vocabs
    path = tmp_path / "triples.tsv"
    path.write_text("a\tr\tb\n\n\r\nb\tr\tc\r\n", encoding="utf-8")
    assert len(load_triples(str(path), ent, rel, grow=True)) == 2


def test_triples_round_trip(tmp_path, write_tsv, vocabs):
    ent, rel, _ = vocabs
    rows = [
        (fauxfactory.gen_alphanumeric(), "/film/film/genre", fauxfactory.gen_alphanumeric())
        for _ in range(5)
    ]
    path = write_tsv("triples.tsv", rows)
    triples = load_triples(path, ent, rel, grow=True)
    assert len(triples) == 5
    assert [(ent.decode(h), rel.decode(r), ent.decode(t)) for h, r, t in triples] == rows

    out = str(tmp_path / "copy.tsv")
    write_triples(out, triples, ent, rel)
    assert load_triples(out, ent, rel) == triples


def test_assertions_round_trip(tmp_path, write_tsv, vocabs):
    ent, _, typ = vocabs
    rows = [(f"entity_{i}", f"/people/person/{i % 3}") for i in range(10)]
    assertions = load_type_assertions(write_tsv("types.tsv", rows), ent, typ, grow=True)
    assert len(assertions) == 10
    assert [(ent.decode(e), typ.decode(t)) for e, t in assertions] == rows

    out = str(tmp_path / "copy.tsv")
    write_type_assertions(out, assertions, ent, typ)
    assert load_type_assertions(out, ent, typ) == assertions


def test_wrong_field_count(write_tsv, vocabs):
    ent, rel, _ = vocabs
    path = write_tsv("triples.tsv", [("a", "r", "b"), ("a", "r")])
    with pytest.raises(TsvParseError) as excinfo:
        load_triples(path, ent, rel, grow=True)
    assert excinfo.value.line_number == 2
    assert excinfo.value.found == 2
    assert ":2:" in str(excinfo.value)


def test_unseen_symbol_with_frozen_vocab(write_tsv):
    ent = Vocab("entity", ["Barack_Obama", "Barack_Obama_Sr", "Honolulu"])
    rel = Vocab("relation", ["born_in"])
    rows = [("Barack_Obama", "born_in", "Honolulu"), ("Barack", "born_in", "x")]
    path = write_tsv("triples.tsv", rows)
    with pytest.raises(VocabularyError) as excinfo:
        load_triples(path, ent, rel)
    err = excinfo.value
    assert err.name == "Barack"
    assert err.line_number == 2
    assert err.suggestions == ("Barack_Obama", "Barack_Obama_Sr")
    assert "did you mean" in str(err)
    assert len(ent) == 3


def test_vocab_is_bijective():
    vocab = Vocab("type")
    names = [fauxfactory.gen_alpha() for _ in range(20)]
    for name in names:
        vocab.add(name)
    assert all(vocab.decode(vocab.encode(name)) == name for name in names)
    assert sorted(vocab.index.values()) == list(range(len(vocab)))


def test_vocab_dump_and_load(tmp_path):
    vocab = Vocab("entity", ["/m/01", "/m/02", "Ünïcode name"])
    path = str(tmp_path / "vocab.tsv")
    vocab.dump(path)
    assert Vocab.load(path, "entity") == vocab


@pytest.mark.parametrize(
    "content, error",
    [("0\ta\n2\tb\n", DataError), ("0\ta\n1\ta\n", DataError), ("x\ta\n", TsvParseError)],
    ids=["gap", "duplicate", "bad-id"],
)
def test_vocab_load_rejects_bad_files(tmp_path, content, error):
    path = tmp_path / "vocab.tsv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(error):
        Vocab.load(str(path), "entity")


def test_type_triples_single_expansion():
    triples = [Triple(0, 0, 1)]
    assert generate_type_triples(triples, {0: {10}, 1: {20}}) == [TypeTriple(10, 0, 20)]


def test_type_triples_min_count():
    triples = [Triple(0, 0, 1), Triple(2, 0, 3), Triple(0, 1, 3)]
    types_of = {0: {1}, 1: {2}, 2: {1}, 3: {2}}
    assert generate_type_triples(triples, types_of, min_count=2) == [TypeTriple(1, 0, 2)]
    assert generate_type_triples(triples, types_of, min_count=1) == [
        TypeTriple(1, 0, 2),
        TypeTriple(1, 1, 2),
    ]


def test_type_triples_skip_untyped_entities():
    triples = [Triple(0, 0, 1), Triple(1, 0, 2)]
    assert count_type_triples(triples, {0: {0}, 2: {1}}) == Counter()


def test_type_triples_cross_product_counts():
    counts = count_type_triples([Triple(0, 0, 1)], {0: {0, 1}, 1: {2, 3, 4}})
    assert sum(counts.values()) == 6
    assert set(counts.values()) == {1}


def test_filter_rejects_non_positive_min_count():
    with pytest.raises(ConfigurationError):
        filter_type_triples(Counter(), 0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**16), min_count=st.integers(1, 4))
def test_type_triples_monotone_in_min_count(seed, min_count):
    kb = make_random_kb(seed, n_ent=15, n_type=4, n_rel=2, n_triples=30)
    stricter = set(generate_type_triples(kb.triples, kb.types_of, min_count + 1))
    looser = set(generate_type_triples(kb.triples, kb.types_of, min_count))
    assert stricter <= looser


def test_kb_indexes_single_triple():
    kb = build_kb([Triple(0, 0, 1)], [TypeAssertion(0, 0)], vocabs=None)
    assert kb.out_edges[0] == ((0, 1),)
    assert kb.in_edges[1] == ((0, 0),)
    assert kb.out_edges[1] == ()
    assert kb.in_edges[0] == ()


def test_kb_isolated_entity(tiny_kb):
    kb = build_kb([Triple(0, 0, 1)], [TypeAssertion(2, 0)])
    assert kb.n_entities == 3
    assert kb.out_edges[2] == () and kb.in_edges[2] == ()
    assert tiny_kb.types(99) == frozenset()


def test_kb_indexes_match_scan():
    kb = make_random_kb(seed=3, n_ent=20, n_triples=30)
    for e in range(kb.n_entities):
        assert sorted(kb.out_edges[e]) == sorted((r, t) for h, r, t in kb.triples if h == e)
        assert sorted(kb.in_edges[e]) == sorted((r, h) for h, r, t in kb.triples if t == e)
        assert kb.types(e) == {t for x, t in kb.assertions if x == e}
        assert kb.true_types(e) == {
            t for x, t in kb.assertions + kb.valid_assertions + kb.test_assertions if x == e
        }


def test_kb_type_pairs(tiny_kb):
    assert sorted(tiny_kb.tail_type_pairs(0)) == [(0, 1), (1, 1), (1, 2)]
    assert tiny_kb.head_type_pairs(0) == [(0, 2)]
    assert tiny_kb.tail_type_pairs(1) == []


def test_kb_rejects_out_of_range_ids():
    from connecte.data import KnowledgeBase

    with pytest.raises(DataError):
        KnowledgeBase([Triple(0, 0, 5)], [], [], n_entities=2, n_relations=1, n_types=1)


def test_kb_arrays_and_stats(tiny_kb):
    assert tiny_kb.triple_array.shape == (3, 3)
    assert tiny_kb.assertion_array.shape == (5, 2)
    assert tiny_kb.triple_array is tiny_kb.triple_array
    stats = dataset_stats(tiny_kb)
    assert (stats.entities, stats.relations, stats.types) == (4, 2, 3)
    assert stats.triples == 3
    assert stats.assertions == 5
    assert stats.typed_entities == 4
    assert stats.typed_without_triples == 0


def test_dataset_stats_counts_typed_entities_without_triples():
    kb = build_kb(
        [Triple(0, 0, 1)],
        [TypeAssertion(0, 0), TypeAssertion(2, 1), TypeAssertion(2, 0), TypeAssertion(3, 1)],
    )
    stats = dataset_stats(kb)
    assert stats.entities == 4
    assert stats.typed_entities == 3
    assert stats.typed_without_triples == 2
    assert stats.type_triples == 0


@pytest.fixture
def raw_dataset(write_tsv):
    triples = write_tsv(
        "train.tsv",
        [("a", "r", "b"), ("c", "r", "d"), ("a", "s", "d"), ("e", "r", "a")],
    )
    types = write_tsv(
        "types.tsv",
        [("a", "/T1"), ("b", "/T2"), ("c", "/T1"), ("d", "/T2"), ("e", "/T3")],
    )
    test = write_tsv("test.tsv", [("e", "/T1"), ("unseen", "/T9")])
    return triples, types, test


def test_prepare_and_load(tmp_path, raw_dataset):
    triples, types, test = raw_dataset
    out = str(tmp_path / "prepared")
    summary = prepare_dataset(triples, types, out, min_count=2, test_path=test)
    assert summary.expansions == 4
    assert summary.unique == 3
    assert summary.surviving == 1

    data = load_prepared(out)
    kb = data.kb
    assert kb.n_entities == 5
    assert kb.n_types == 3
    assert kb.type_triples == (TypeTriple(0, 0, 1),)
    assert len(kb.test_assertions) == 2
    # names only seen in the test split get ids past the trained range
    assert len(data.eval_vocabs.entity) == 6
    assert data.eval_vocabs.type.encode("/T9") == 3


def test_prepare_missing_file_writes_nothing(tmp_path, raw_dataset):
    _, types, _ = raw_dataset
    out = tmp_path / "prepared"
    with pytest.raises(FileNotFoundError):
        prepare_dataset(str(tmp_path / "nope.tsv"), types, str(out))
    assert not out.exists()
