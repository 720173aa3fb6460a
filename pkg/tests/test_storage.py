import random
import struct

import numpy as np
import pytest

from ngcluster import TokenizedCorpus, storage, traverse_document
from ngcluster.pipeline import build

from conftest import corpus_of, random_corpus


def assert_same(a, b):
    assert a.vocab.id_to_word == b.vocab.id_to_word
    assert a.vocab.frequency.tolist() == b.vocab.frequency.tolist()
    assert a.vocab.group_offset.tolist() == b.vocab.group_offset.tolist()
    for name in ("next_position", "next_word_id", "slot_word_id"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    assert a.doc_table == b.doc_table
    assert a.para_table == b.para_table


def test_roundtrip_with_table(c2):
    idx, table = build(c2)
    idx2, table2 = storage.loads(storage.dumps(idx, table))
    assert_same(idx, idx2)
    for name in ("length", "next_phrase", "prev_phrase"):
        assert np.array_equal(getattr(table, name), getattr(table2, name))


def test_roundtrip_without_table(tmp_path, c1):
    idx, _ = build(c1)
    path = tmp_path / "c1.ngc"
    storage.save(path, idx)
    idx2, table2 = storage.load(path)
    assert table2 is None
    assert_same(idx, idx2)


def test_header_layout(c1):
    idx, table = build(c1)
    data = storage.dumps(idx, table)
    assert data[:4] == b"NGC1"
    assert struct.unpack_from("<II", data, 4) == (1, idx.vocab.size)
    n = idx.slot_count
    tail = np.frombuffer(data[-4 * n :], dtype="<u4")
    assert tail.tolist() == [v & 0xFFFFFFFF for v in table.prev_phrase.tolist()]


def test_none_encoded_as_all_ones():
    idx, _ = build(corpus_of("solo"))
    data = storage.dumps(idx)
    assert b"\xff\xff\xff\xff" in data


def test_unicode_and_multi_doc_roundtrip():
    corpus = TokenizedCorpus([("α.txt", [["ß", "→"], ["ß"]]), ("b/c.txt", [["→", "ß", "→"]])])
    idx, table = build(corpus)
    idx2, _ = storage.loads(storage.dumps(idx, table))
    assert_same(idx, idx2)
    assert traverse_document(idx2, 1) == traverse_document(idx, 1)


def test_empty_index_roundtrip():
    idx, table = build(TokenizedCorpus([]))
    idx2, table2 = storage.loads(storage.dumps(idx, table))
    assert idx2.slot_count == 0 and table2 is not None


@pytest.mark.parametrize("seed", range(5))
def test_random_roundtrip_deterministic(seed):
    corpus = random_corpus(random.Random(seed), max_tokens=800)
    idx, table = build(corpus)
    first = storage.dumps(idx, table)
    assert storage.dumps(*storage.loads(first)) == first


@pytest.mark.parametrize(
    "data,msg",
    [(b"XXXX", "not an NGC1"), (b"NGC1" + struct.pack("<I", 9), "version"), (b"NGC1", "truncated")],
)
def test_bad_files(data, msg):
    with pytest.raises(storage.IndexFormatError, match=msg):
        storage.loads(data)


def test_trailing_bytes(c0):
    idx, table = build(c0)
    with pytest.raises(storage.IndexFormatError, match="trailing"):
        storage.loads(storage.dumps(idx, table) + b"\0")
