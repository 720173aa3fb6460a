# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the grouped index. Semantics mirror ``_pykernels``."""
import numpy as np

from libc.stdlib cimport malloc, free, qsort

cdef int NONE = -1


cdef struct Item:
    int key
    int member
    int cursor


cdef int _cmp_item(const void* a, const void* b) noexcept nogil:
    cdef const Item* x = <const Item*>a
    cdef const Item* y = <const Item*>b
    if x.key != y.key:
        return -1 if x.key < y.key else 1
    if x.member != y.member:
        return -1 if x.member < y.member else 1
    return 0


cdef int _cmp_int(const void* a, const void* b) noexcept nogil:
    cdef int x = (<const int*>a)[0]
    cdef int y = (<const int*>b)[0]
    return (x > y) - (x < y)


def translate(const int[::1] token_ids, const unsigned char[::1] para_last,
              const unsigned char[::1] doc_last, group_offset):
    cdef Py_ssize_t n = token_ids.shape[0]
    cdef Py_ssize_t i
    cdef int w, s, prev = NONE
    cursor_arr = np.ascontiguousarray(group_offset, dtype=np.int32).copy()
    cdef int[::1] cursor = cursor_arr
    npos_arr = np.full(n, NONE, dtype=np.int32)
    nwid_arr = np.zeros(n, dtype=np.int32)
    swid_arr = np.zeros(n, dtype=np.int32)
    sop_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] npos = npos_arr
    cdef int[::1] nwid = nwid_arr
    cdef int[::1] swid = swid_arr
    cdef int[::1] sop = sop_arr
    with nogil:
        for i in range(n):
            w = token_ids[i]
            s = cursor[w]
            cursor[w] = s + 1
            swid[s] = w
            sop[i] = s
            if prev != NONE:
                npos[prev] = s
                if not para_last[i - 1]:
                    nwid[prev] = w
            if doc_last[i]:
                prev = NONE
            else:
                prev = s
    return npos_arr, nwid_arr, swid_arr, sop_arr


def phrase_lengths(const int[::1] next_position, const int[::1] next_word_id,
                   group_offset, int vocab_size):
    cdef Py_ssize_t n = next_position.shape[0]
    offsets_arr = np.ascontiguousarray(group_offset, dtype=np.int64)
    cdef long long[::1] offsets = offsets_arr
    length_arr = np.ones(n, dtype=np.int32)
    nxt_arr = np.full(n, NONE, dtype=np.int32)
    prv_arr = np.full(n, NONE, dtype=np.int32)
    cdef int[::1] length = length_arr
    cdef int[::1] nxt = nxt_arr
    cdef int[::1] prv = prv_arr
    if n == 0:
        return length_arr, nxt_arr, prv_arr

    cdef Item* items = <Item*>malloc(n * sizeof(Item))
    cdef int* ended = <int*>malloc(n * sizeof(int))
    cdef int* st_lo = <int*>malloc((n + 1) * sizeof(int))
    cdef int* st_hi = <int*>malloc((n + 1) * sizeof(int))
    cdef int* st_depth = <int*>malloc((n + 1) * sizeof(int))
    if not items or not ended or not st_lo or not st_hi or not st_depth:
        free(items); free(ended); free(st_lo); free(st_hi); free(st_depth)
        raise MemoryError()

    cdef int w, lo, hi, depth, sp, k, j, t, key, n_ended, prev, m
    cdef long long g_lo, g_hi
    try:
        with nogil:
            for w in range(1, vocab_size + 1):
                g_lo = offsets[w]
                g_hi = offsets[w + 1]
                if g_hi - g_lo < 2:
                    continue
                for k in range(<int>(g_hi - g_lo)):
                    items[k].member = <int>g_lo + k
                    items[k].cursor = <int>g_lo + k
                sp = 0
                st_lo[0] = 0
                st_hi[0] = <int>(g_hi - g_lo)
                st_depth[0] = 1
                sp = 1
                while sp > 0:
                    sp -= 1
                    lo = st_lo[sp]
                    hi = st_hi[sp]
                    depth = st_depth[sp]
                    for k in range(lo, hi):
                        items[k].key = next_word_id[items[k].cursor]
                    qsort(&items[lo], hi - lo, sizeof(Item), _cmp_item)
                    n_ended = 0
                    k = lo
                    while k < hi:
                        key = items[k].key
                        j = k + 1
                        while j < hi and items[j].key == key:
                            j += 1
                        if key == 0 or j - k == 1:
                            for t in range(k, j):
                                ended[n_ended] = items[t].member
                                n_ended += 1
                        else:
                            for t in range(k, j):
                                items[t].cursor = next_position[items[t].cursor]
                            st_lo[sp] = k
                            st_hi[sp] = j
                            st_depth[sp] = depth + 1
                            sp += 1
                        k = j
                    if depth >= 2 and n_ended > 0:
                        qsort(ended, n_ended, sizeof(int), _cmp_int)
                        prev = NONE
                        for t in range(n_ended):
                            m = ended[t]
                            length[m] = depth
                            if prev != NONE:
                                nxt[prev] = m
                                prv[m] = prev
                            prev = m
    finally:
        free(items)
        free(ended)
        free(st_lo)
        free(st_hi)
        free(st_depth)
    return length_arr, nxt_arr, prv_arr
