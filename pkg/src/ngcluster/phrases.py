"""Maximal repeated phrases anchored at each slot, and useful-phrase selection.

A phrase is identified by its anchor slot and its length. Anchors of
identical phrases are threaded together by ``next_phrase``/``prev_phrase``
links, forming one doubly-linked chain per distinct phrase.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, MutableSequence, Sequence, Set, Tuple

import numpy as np

from ngcluster import kernels
from ngcluster.corpus import SENTINEL_ID
from ngcluster.index import NONE, GroupedIndex


@dataclass
class PhraseTable:
    """Per-slot phrase length with identical-phrase chains.

    Fields are int32 numpy arrays for finished tables; the selection pass
    works on plain lists wrapped in the same type.
    """

    length: MutableSequence[int]
    next_phrase: MutableSequence[int]
    prev_phrase: MutableSequence[int]

    def __len__(self) -> int:
        return len(self.length)

    def chain(self, s: int) -> List[int]:
        """All members of the chain containing ``s``, head first."""
        prv, nxt = self.prev_phrase, self.next_phrase
        while prv[s] != NONE:
            s = int(prv[s])
        out = []
        while s != NONE:
            out.append(int(s))
            s = int(nxt[s])
        return out

    def as_arrays(self) -> "PhraseTable":
        return PhraseTable(
            np.asarray(self.length, dtype=np.int32),
            np.asarray(self.next_phrase, dtype=np.int32),
            np.asarray(self.prev_phrase, dtype=np.int32),
        )

    def as_lists(self) -> "PhraseTable":
        return PhraseTable(
            np.asarray(self.length).tolist(),
            np.asarray(self.next_phrase).tolist(),
            np.asarray(self.prev_phrase).tolist(),
        )

    def longest(self) -> Tuple[int, int]:
        """``(length, frequency)`` of the longest phrase; ties go to the most frequent."""
        length = np.asarray(self.length)
        if length.size == 0:
            return 0, 0
        top = int(length.max())
        if top < 2:
            return 1, 1
        heads = np.nonzero((length == top) & (np.asarray(self.prev_phrase) == NONE))[0]
        return top, max(len(self.chain(int(h))) for h in heads)


def splice_out(table: PhraseTable, s: int) -> None:
    """Unlink ``s`` from its chain, joining its neighbours to each other."""
    nxt, prv = table.next_phrase, table.prev_phrase
    before, after = prv[s], nxt[s]
    if before != NONE:
        nxt[before] = after
    if after != NONE:
        prv[after] = before
    nxt[s] = NONE
    prv[s] = NONE


def phrase_frequency(table: PhraseTable, s: int) -> int:
    """Number of anchors in the chain containing ``s`` (``s`` included)."""
    prv, nxt = table.prev_phrase, table.next_phrase
    while prv[s] != NONE:
        s = prv[s]
    count = 0
    while s != NONE:
        count += 1
        s = nxt[s]
    return count


def compute_phrase_lengths(
    index: GroupedIndex, method: str = "grouped", backend: str | None = None
) -> PhraseTable:
    """Longest phrase anchored at each slot that occurs at least twice.

    ``method="grouped"`` refines each word group by successive next words in
    one pass (compiled or Python kernel). ``method="anchor"`` runs the
    anchor-at-a-time matching procedure, overwriting shorter entries and
    splicing them out of their chains; it is quadratic in group size and kept
    as a cross-check.
    """
    vocab = index.vocab
    if method == "grouped":
        impl = kernels.get_backend(backend)
        length, nxt, prv = impl.phrase_lengths(
            index.next_position, index.next_word_id, vocab.group_offset, vocab.size
        )
        return PhraseTable(length, nxt, prv)
    if method == "anchor":
        return _phrase_lengths_by_anchor(index).as_arrays()
    raise ValueError(f"unknown method {method!r}")


def _phrase_lengths_by_anchor(index: GroupedIndex) -> PhraseTable:
    npos = index.next_position.tolist()
    nwid = index.next_word_id.tolist()
    offsets = index.vocab.group_offset.tolist()
    n = len(npos)
    table = PhraseTable([1] * n, [NONE] * n, [NONE] * n)
    length, nxt, prv = table.length, table.next_phrase, table.prev_phrase

    for w in range(1, index.vocab.size + 1):
        group = range(offsets[w], offsets[w + 1])
        if len(group) < 2:
            continue
        for s in group:
            matching = list(group)
            cursor = {m: m for m in matching}
            size = 1
            while True:
                key = nwid[cursor[s]]
                if key == SENTINEL_ID:
                    break
                narrowed = [m for m in matching if nwid[cursor[m]] == key]
                if len(narrowed) < 2:
                    break
                matching = narrowed
                for m in matching:
                    cursor[m] = npos[cursor[m]]
                size += 1
            if size < 2:
                continue
            prev = NONE
            for m in matching:
                if length[m] > size:
                    continue
                if size > length[m] >= 2:
                    splice_out(table, m)
                length[m] = size
                if prev != NONE:
                    nxt[prev] = m
                    prv[m] = prev
                prev = m
            if prev != NONE:
                nxt[prev] = NONE
    return table


@dataclass(frozen=True)
class UsefulPhrase:
    phrase_id: int
    token_ids: Tuple[int, ...]
    occurrences: Tuple[int, ...]  # anchor slots, ascending

    @property
    def length(self) -> int:
        return len(self.token_ids)

    @property
    def frequency(self) -> int:
        return len(self.occurrences)


@dataclass
class UsefulPhraseSet:
    entries: List[UsefulPhrase] = field(default_factory=list)
    slot_to_phrase: Dict[int, int] = field(default_factory=dict)
    table: PhraseTable | None = None

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, phrase_id: int) -> UsefulPhrase:
        return self.entries[phrase_id]

    def __iter__(self):
        return iter(self.entries)


def select_useful(
    table: PhraseTable,
    index: GroupedIndex,
    n_best: int,
    min_len: int = 2,
    max_total: int | None = None,
) -> UsefulPhraseSet:
    """Keep the ``n_best`` most frequent phrases at each length level.

    Levels run from the longest phrase length down to ``min_len``. At each
    level, chains with a single anchor are dropped. Candidates are taken in
    order of descending frequency, then ascending token ids. A candidate
    occurrence whose span strictly contains an anchor already kept at this
    level is set aside; a candidate with at least two remaining occurrences is
    kept if the level still has room. Keeping a phrase deletes every other
    entry anchored strictly inside its occurrence spans. Everything not kept
    is shortened by one word and merged into any chain of the identical
    shorter phrase.

    ``max_total`` optionally caps the number of kept phrases across levels.
    The input table is not modified; the revised table is returned on the
    result.
    """
    if n_best < 0:
        raise ValueError("n_best must be >= 0")
    if min_len < 2:
        raise ValueError("min_len must be >= 2")

    work = table.as_lists()
    length, nxt, prv = work.length, work.next_phrase, work.prev_phrase
    npos = index.next_position.tolist()
    swid = index.slot_word_id.tolist()

    by_level: Dict[int, Set[int]] = defaultdict(set)
    for s, L in enumerate(length):
        if L >= 2:
            by_level[L].add(s)

    def set_length(s: int, L: int) -> None:
        old = length[s]
        if old >= 2:
            by_level[old].discard(s)
        length[s] = L
        if L >= 2:
            by_level[L].add(s)

    def span(s: int, L: int) -> List[int]:
        out = [s]
        for _ in range(L - 1):
            s = npos[s]
            out.append(s)
        return out

    def decode(s: int, L: int) -> Tuple[int, ...]:
        return tuple(swid[t] for t in span(s, L))

    def drop(s: int) -> None:
        splice_out(work, s)
        set_length(s, 1)

    def link(members: Sequence[int]) -> None:
        for a, b in zip(members, members[1:]):
            nxt[a] = b
            prv[b] = a

    kept: List[Tuple[Tuple[int, ...], List[int]]] = []
    protected: Set[int] = set()
    top = max(by_level) if by_level else 0

    for L in range(top, min_len - 1, -1):
        candidates = []
        for head in sorted(s for s in by_level[L] if prv[s] == NONE):
            members = work.chain(head)
            if len(members) < 2:
                for m in members:
                    drop(m)
                continue
            candidates.append((-len(members), decode(head, L), members))
        candidates.sort()

        level_anchors: Set[int] = set()
        kept_here = 0
        shorten: List[List[int]] = []
        for _, seq, members in candidates:
            alive = [m for m in members if length[m] == L and m not in protected]
            live = [m for m in alive if level_anchors.isdisjoint(span(m, L)[1:])]
            room = kept_here < n_best and (max_total is None or len(kept) < max_total)
            if not (room and len(live) >= 2):
                shorten.append(alive)
                continue
            live_set = set(live)
            set_aside = [m for m in alive if m not in live_set]
            for m in set_aside:
                splice_out(work, m)
            shorten.append(set_aside)
            kept.append((seq, live))
            kept_here += 1
            protected.update(live)
            level_anchors.update(live)
            for m in live:
                by_level[L].discard(m)
            for m in live:
                for t in span(m, L)[1:]:
                    if t not in protected and length[t] >= 2:
                        drop(t)

        if L - 1 < min_len:
            for group in shorten:
                for m in group:
                    if length[m] == L:
                        drop(m)
            continue

        existing: Dict[Tuple[int, ...], int] = {}
        for head in sorted(s for s in by_level[L - 1] if prv[s] == NONE):
            existing.setdefault(decode(head, L - 1), head)
        for group in shorten:
            group = [m for m in group if length[m] == L]
            if not group:
                continue
            for m in group:
                splice_out(work, m)
                set_length(m, L - 1)
            link(group)
            seq = decode(group[0], L - 1)
            head = existing.get(seq)
            if head is None:
                existing[seq] = group[0]
            else:
                tail = head
                while nxt[tail] != NONE:
                    tail = nxt[tail]
                nxt[tail] = group[0]
                prv[group[0]] = tail

    # Entries below min_len are never useful.
    for L in list(by_level):
        for s in list(by_level[L]):
            drop(s)

    result = UsefulPhraseSet(table=work.as_arrays())
    for phrase_id, (seq, live) in enumerate(kept):
        occ = tuple(sorted(live))
        result.entries.append(UsefulPhrase(phrase_id, seq, occ))
        for s in occ:
            result.slot_to_phrase[s] = phrase_id
    return result
