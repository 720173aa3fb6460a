"""Grouped-occurrence index: one slot per token, slots grouped by word id."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from ngcluster import kernels
from ngcluster.corpus import SENTINEL_ID, TokenizedCorpus, Vocabulary

NONE = -1


class ParagraphRecord(NamedTuple):
    doc_ref: int
    para_ordinal: int
    first_slot: int
    word_count: int


@dataclass(frozen=True)
class GroupedIndex:
    """Per-slot link tables plus document and paragraph records.

    All per-slot arrays are int32. ``next_position`` is NONE (-1) at the last
    slot of each document; ``next_word_id`` is the sentinel (0) at the last
    slot of each paragraph.
    """

    vocab: Vocabulary
    next_position: np.ndarray
    next_word_id: np.ndarray
    slot_word_id: np.ndarray
    doc_table: Tuple[Tuple[str, int], ...]
    para_table: Tuple[ParagraphRecord, ...]

    @property
    def slot_count(self) -> int:
        return int(self.next_position.shape[0])

    @property
    def nbytes(self) -> int:
        return self.next_position.nbytes + self.next_word_id.nbytes + self.slot_word_id.nbytes

    def para_label(self, para_ref: int) -> Tuple[str, int]:
        rec = self.para_table[para_ref]
        return self.doc_table[rec.doc_ref][0], rec.para_ordinal

    def paragraph_of_slot(self) -> np.ndarray:
        """Map each slot to the index of its paragraph in ``para_table``."""
        npos = self.next_position.tolist()
        owner = [0] * self.slot_count
        for ref, rec in enumerate(self.para_table):
            s = rec.first_slot
            for _ in range(rec.word_count):
                owner[s] = ref
                s = npos[s]
        return np.array(owner, dtype=np.int32)


def translate_corpus(corpus: TokenizedCorpus, vocab: Vocabulary, backend: str | None = None) -> GroupedIndex:
    """Lay the corpus out in the grouped format and link each slot to its successor.

    Slots within a word's group are filled in corpus order.
    """
    n = corpus.token_count
    token_ids = np.empty(n, dtype=np.int32)
    para_last = np.zeros(n, dtype=np.uint8)
    doc_last = np.zeros(n, dtype=np.uint8)
    word_to_id = vocab.word_to_id
    para_spans: List[Tuple[int, int, int, int]] = []  # doc_ref, ordinal, start pos, count
    pos = 0
    for doc_ref, (_, paras) in enumerate(corpus.documents):
        for ordinal, para in enumerate(paras):
            start = pos
            for tok in para:
                try:
                    token_ids[pos] = word_to_id[tok]
                except KeyError:
                    raise ValueError(f"token {tok!r} missing from vocabulary") from None
                pos += 1
            para_last[pos - 1] = 1
            para_spans.append((doc_ref, ordinal, start, len(para)))
        if paras:
            doc_last[pos - 1] = 1
    if int(vocab.group_offset[-1]) != n:
        raise ValueError("vocabulary was not built from this corpus")

    impl = kernels.get_backend(backend)
    next_position, next_word_id, slot_word_id, slot_of_position = impl.translate(
        token_ids, para_last, doc_last, vocab.group_offset
    )

    doc_table = []
    pos = 0
    for doc_id, paras in corpus.documents:
        doc_table.append((doc_id, int(slot_of_position[pos]) if paras else NONE))
        pos += sum(len(p) for p in paras)
    para_table = tuple(
        ParagraphRecord(doc_ref, ordinal, int(slot_of_position[start]), count)
        for doc_ref, ordinal, start, count in para_spans
    )
    return GroupedIndex(
        vocab=vocab,
        next_position=next_position,
        next_word_id=next_word_id,
        slot_word_id=slot_word_id,
        doc_table=tuple(doc_table),
        para_table=para_table,
    )


def traverse_paragraph(index: GroupedIndex, para_ref: int) -> List[Tuple[int, int]]:
    """Return ``(slot, word_id)`` pairs of one paragraph in text order."""
    if not 0 <= para_ref < len(index.para_table):
        raise IndexError(f"paragraph reference {para_ref} out of range")
    rec = index.para_table[para_ref]
    out = []
    s = rec.first_slot
    for _ in range(rec.word_count):
        out.append((s, int(index.slot_word_id[s])))
        s = int(index.next_position[s])
    return out


def traverse_document(index: GroupedIndex, doc_ref: int) -> List[int]:
    """Word ids of a whole document, following ``next_position`` until NONE."""
    _, s = index.doc_table[doc_ref]
    ids = []
    npos = index.next_position
    swid = index.slot_word_id
    while s != NONE:
        ids.append(int(swid[s]))
        s = int(npos[s])
    return ids


def build_index(corpus: TokenizedCorpus, backend: str | None = None) -> GroupedIndex:
    from ngcluster.corpus import build_vocabulary

    return translate_corpus(corpus, build_vocabulary(corpus), backend=backend)


__all__ = [
    "NONE",
    "SENTINEL_ID",
    "GroupedIndex",
    "ParagraphRecord",
    "build_index",
    "translate_corpus",
    "traverse_document",
    "traverse_paragraph",
]
