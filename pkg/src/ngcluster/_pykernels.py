"""Pure-Python kernels; used when the compiled extension is unavailable.

Array conventions match ``_kernels.pyx``: int32 numpy arrays, ``-1`` for NONE,
``0`` for the paragraph sentinel.
"""
from __future__ import annotations

from itertools import groupby

import numpy as np

NONE = -1


def translate(token_ids, para_last, doc_last, group_offset):
    """Scatter corpus-order token ids into the grouped slot layout.

    Returns ``(next_position, next_word_id, slot_word_id, slot_of_position)``.
    """
    ids = np.asarray(token_ids).tolist()
    plast = np.asarray(para_last).tolist()
    dlast = np.asarray(doc_last).tolist()
    n = len(ids)
    cursor = np.asarray(group_offset).tolist()
    next_position = [NONE] * n
    next_word_id = [0] * n
    slot_word_id = [0] * n
    slot_of_position = [0] * n
    prev = NONE
    for i, w in enumerate(ids):
        s = cursor[w]
        cursor[w] = s + 1
        slot_word_id[s] = w
        slot_of_position[i] = s
        if prev != NONE:
            next_position[prev] = s
            if not plast[i - 1]:
                next_word_id[prev] = w
        prev = NONE if dlast[i] else s
    as32 = lambda xs: np.array(xs, dtype=np.int32)  # noqa: E731
    return (
        as32(next_position),
        as32(next_word_id),
        as32(slot_word_id),
        as32(slot_of_position),
    )


def phrase_lengths(next_position, next_word_id, group_offset, vocab_size):
    """Maximal repeated phrase length per slot, with identical-phrase chains.

    Each word group is refined by the next word id, then the one after, while
    at least two members still agree; a member drops out when its next word
    is the sentinel or unshared, and its phrase length is the depth reached.
    Members that drop out at the same node share the same maximal phrase and
    are chained in slot order.

    Returns ``(length, next_phrase, prev_phrase)``.
    """
    npos = np.asarray(next_position).tolist()
    nwid = np.asarray(next_word_id).tolist()
    offsets = np.asarray(group_offset).tolist()
    n = len(npos)
    length = [1] * n
    nxt = [NONE] * n
    prv = [NONE] * n

    for w in range(1, vocab_size + 1):
        lo, hi = offsets[w], offsets[w + 1]
        if hi - lo < 2:
            continue
        # stack entries: (list of (member, cursor), depth)
        stack = [([(s, s) for s in range(lo, hi)], 1)]
        while stack:
            items, depth = stack.pop()
            items.sort(key=lambda it: (nwid[it[1]], it[0]))
            ended = []
            for key, run in groupby(items, key=lambda it: nwid[it[1]]):
                run = list(run)
                if key == 0 or len(run) == 1:
                    ended.extend(m for m, _ in run)
                else:
                    stack.append(([(m, npos[c]) for m, c in run], depth + 1))
            if depth >= 2 and ended:
                ended.sort()
                prev = NONE
                for m in ended:
                    length[m] = depth
                    if prev != NONE:
                        nxt[prev] = m
                        prv[m] = prev
                    prev = m

    as32 = lambda xs: np.array(xs, dtype=np.int32)  # noqa: E731
    return as32(length), as32(nxt), as32(prv)
