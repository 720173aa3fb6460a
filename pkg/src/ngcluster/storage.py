"""Binary index container.

Layout (all integers little-endian uint32 unless noted)::

    b"NGC1"  version
    vocabulary: V, then V x (frequency, byte length, utf-8 word) in id order
    slot_count N
    documents: D, then D x (byte length, utf-8 doc_id, first_slot)
    paragraphs: P, then P x (doc_ref, ordinal, first_slot, word_count)
    next_position[N]  next_word_id[N]  slot_word_id[N]
    has_phrases (0 or 1), then length[N]  next_phrase[N]  prev_phrase[N]

NONE (-1) is stored as 0xFFFFFFFF.
"""
from __future__ import annotations

import io
import struct
from pathlib import Path
from typing import BinaryIO, Optional, Tuple

import numpy as np

from ngcluster.corpus import Vocabulary
from ngcluster.index import GroupedIndex, ParagraphRecord
from ngcluster.phrases import PhraseTable

MAGIC = b"NGC1"
VERSION = 1
_U32 = struct.Struct("<I")
_WIDE = np.dtype("<u4")


class IndexFormatError(ValueError):
    pass


def _put(out: BinaryIO, *values: int) -> None:
    for v in values:
        out.write(_U32.pack(v & 0xFFFFFFFF))


def _put_str(out: BinaryIO, text: str) -> None:
    raw = text.encode("utf-8")
    _put(out, len(raw))
    out.write(raw)


def _put_array(out: BinaryIO, arr) -> None:
    out.write(np.asarray(arr, dtype=np.int32).astype(_WIDE, casting="unsafe").tobytes())


def dumps(index: GroupedIndex, table: Optional[PhraseTable] = None) -> bytes:
    out = io.BytesIO()
    out.write(MAGIC)
    _put(out, VERSION)
    vocab = index.vocab
    _put(out, vocab.size)
    for wid in range(1, vocab.size + 1):
        _put(out, int(vocab.frequency[wid]))
        _put_str(out, vocab.id_to_word[wid])
    n = index.slot_count
    _put(out, n)
    _put(out, len(index.doc_table))
    for doc_id, first in index.doc_table:
        _put_str(out, doc_id)
        _put(out, first)
    _put(out, len(index.para_table))
    for rec in index.para_table:
        _put(out, *rec)
    for arr in (index.next_position, index.next_word_id, index.slot_word_id):
        _put_array(out, arr)
    if table is None:
        _put(out, 0)
    else:
        _put(out, 1)
        for arr in (table.length, table.next_phrase, table.prev_phrase):
            _put_array(out, arr)
    return out.getvalue()


def save(path: str | Path, index: GroupedIndex, table: Optional[PhraseTable] = None) -> None:
    Path(path).write_bytes(dumps(index, table))


class _Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.pos = 0

    def take(self, size: int) -> memoryview:
        if self.pos + size > len(self.data):
            raise IndexFormatError("truncated index file")
        chunk = self.data[self.pos : self.pos + size]
        self.pos += size
        return chunk

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def i32(self) -> int:
        v = self.u32()
        return v - (1 << 32) if v >= 1 << 31 else v

    def text(self) -> str:
        return bytes(self.take(self.u32())).decode("utf-8")

    def array(self, n: int) -> np.ndarray:
        raw = np.frombuffer(self.take(4 * n), dtype=_WIDE)
        return raw.astype(np.int32, casting="unsafe")


def loads(data: bytes) -> Tuple[GroupedIndex, Optional[PhraseTable]]:
    r = _Reader(data)
    if bytes(r.take(4)) != MAGIC:
        raise IndexFormatError("not an NGC1 index file")
    version = r.u32()
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    words, freqs = [], []
    for _ in range(r.u32()):
        freqs.append(r.u32())
        words.append(r.text())
    vocab = Vocabulary.from_frequencies(words, freqs)
    n = r.u32()
    docs = []
    for _ in range(r.u32()):
        doc_id = r.text()
        docs.append((doc_id, r.i32()))
    paras = tuple(ParagraphRecord(r.u32(), r.u32(), r.u32(), r.u32()) for _ in range(r.u32()))
    npos, nwid, swid = r.array(n), r.array(n), r.array(n)
    index = GroupedIndex(vocab, npos, nwid, swid, tuple(docs), paras)
    table = None
    if r.u32():
        table = PhraseTable(r.array(n), r.array(n), r.array(n))
    if r.pos != len(r.data):
        raise IndexFormatError("trailing bytes after index payload")
    return index, table


def load(path: str | Path) -> Tuple[GroupedIndex, Optional[PhraseTable]]:
    return loads(Path(path).read_bytes())
