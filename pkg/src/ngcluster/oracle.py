"""Brute-force reference implementations.

Everything here works on plain token lists and dictionaries keyed by token
tuples; nothing touches the grouped index or phrase chains. Slow but simple,
intended for corpora of a few thousand tokens.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from ngcluster.corpus import TokenizedCorpus

Position = Tuple[int, int]  # (paragraph number in corpus order, offset)


@dataclass(frozen=True)
class OracleCluster:
    ngrams: Tuple[Tuple[str, ...], ...]  # sorted
    members: Tuple[Tuple[str, int], ...]  # sorted (doc_id, paragraph ordinal)
    weight: float


def _paragraphs(corpus: TokenizedCorpus) -> List[List[str]]:
    return [list(p) for _, paras in corpus.documents for p in paras]


def _ids(corpus: TokenizedCorpus) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    first: Dict[str, int] = {}
    for i, tok in enumerate(t for p in _paragraphs(corpus) for t in p):
        counts[tok] = counts.get(tok, 0) + 1
        first.setdefault(tok, i)
    ranked = sorted(counts, key=lambda t: (-counts[t], first[t]))
    return {tok: i + 1 for i, tok in enumerate(ranked)}


def naive_phrase_map(corpus: TokenizedCorpus) -> Dict[Tuple[str, ...], List[Position]]:
    """Every in-paragraph n-gram (n >= 2) mapped to its anchor positions."""
    out: Dict[Tuple[str, ...], List[Position]] = defaultdict(list)
    for p, para in enumerate(_paragraphs(corpus)):
        for i in range(len(para)):
            for j in range(i + 2, len(para) + 1):
                out[tuple(para[i:j])].append((p, i))
    return dict(out)


def oracle_maximal_repeats(corpus: TokenizedCorpus) -> List[List[int]]:
    """Per token, the largest L whose anchored L-gram occurs at least twice.

    Counts n-grams level by level. Only anchors whose (L-1)-gram repeated can
    anchor a repeated L-gram, so each level recounts just those anchors.
    """
    paras = _paragraphs(corpus)
    result = [[1] * len(p) for p in paras]
    active = [(p, i) for p, para in enumerate(paras) for i in range(len(para))]
    L = 1
    while active:
        L += 1
        grams = {}
        for p, i in active:
            if i + L <= len(paras[p]):
                grams[(p, i)] = tuple(paras[p][i : i + L])
        counts = Counter(grams.values())
        active = [pos for pos, g in grams.items() if counts[g] >= 2]
        for p, i in active:
            result[p][i] = L
    return result


def oracle_useful(
    corpus: TokenizedCorpus, n_best: int, min_len: int = 2, max_total: Optional[int] = None
) -> List[Tuple[Tuple[str, ...], List[Position]]]:
    """Useful phrases as ``(tokens, anchor positions)`` in selection order."""
    paras = _paragraphs(corpus)
    ids = _ids(corpus)
    maxrep = oracle_maximal_repeats(corpus)
    length: Dict[Position, int] = {
        (p, i): L for p, row in enumerate(maxrep) for i, L in enumerate(row) if L >= 2
    }

    def gram(pos: Position, L: int) -> Tuple[str, ...]:
        p, i = pos
        return tuple(paras[p][i : i + L])

    def interior(pos: Position, L: int) -> Set[Position]:
        p, i = pos
        return {(p, i + k) for k in range(1, L)}

    kept: List[Tuple[Tuple[str, ...], List[Position]]] = []
    top = max(length.values(), default=0)
    for L in range(top, min_len - 1, -1):
        groups: Dict[Tuple[str, ...], List[Position]] = defaultdict(list)
        for pos, l in length.items():
            if l == L:
                groups[gram(pos, L)].append(pos)
        for g, ps in groups.items():
            if len(ps) < 2:
                del length[ps[0]]
        ranked = sorted(
            (g for g, ps in groups.items() if len(ps) >= 2),
            key=lambda g: (-len(groups[g]), tuple(ids[t] for t in g)),
        )
        taken: Set[Position] = set()
        kept_here = 0
        shorten: List[Position] = []
        for g in ranked:
            alive = sorted(pos for pos in groups[g] if length.get(pos) == L)
            live = [pos for pos in alive if not (interior(pos, L) & taken)]
            room = kept_here < n_best and (max_total is None or len(kept) < max_total)
            if room and len(live) >= 2:
                kept.append((g, live))
                kept_here += 1
                taken.update(live)
                for pos in live:
                    del length[pos]
                for pos in live:
                    for t in interior(pos, L):
                        length.pop(t, None)
                shorten.extend(pos for pos in alive if pos not in set(live))
            else:
                shorten.extend(alive)
        for pos in shorten:
            if length.get(pos) == L:
                if L - 1 >= min_len:
                    length[pos] = L - 1
                else:
                    del length[pos]
    return kept


def oracle_pipeline(
    corpus: TokenizedCorpus, n_best: int, min_len: int = 2, max_total: Optional[int] = None
) -> List[OracleCluster]:
    """Clusters by naive set algebra, in ascending report order."""
    paras = _paragraphs(corpus)
    labels = [(doc_id, ordinal) for doc_id, ordinal, _ in corpus.paragraphs()]
    ids = _ids(corpus)
    kept = oracle_useful(corpus, n_best, min_len, max_total)

    def c(n: int) -> float:
        return n + (n - 1) * 0.5

    signature: List[Set[Tuple[str, ...]]] = [set() for _ in paras]
    for g, positions in kept:
        for p, _ in positions:
            signature[p].add(g)

    found: Dict[frozenset, Set[int]] = {}
    for a in range(len(paras)):
        for b in range(a + 1, len(paras)):
            shared = frozenset(signature[a] & signature[b])
            if shared and shared not in found:
                found[shared] = {r for r in range(len(paras)) if shared <= signature[r]}

    clusters = []
    for shared, members in found.items():
        weight = len(members) * sum(c(len(g)) for g in shared)
        clusters.append(
            (
                (weight, -len(members), tuple(sorted(tuple(ids[t] for t in g) for g in shared))),
                OracleCluster(
                    tuple(sorted(shared)), tuple(sorted(labels[r] for r in members)), weight
                ),
            )
        )
    clusters.sort(key=lambda kv: kv[0])
    return [oc for _, oc in clusters]


def oracle_paragraph_weights(
    corpus: TokenizedCorpus, n_best: int, min_len: int = 2
) -> Dict[Tuple[str, int], float]:
    labels = [(doc_id, ordinal) for doc_id, ordinal, _ in corpus.paragraphs()]
    paras = _paragraphs(corpus)
    numer = [0.0] * len(paras)
    for g, positions in oracle_useful(corpus, n_best, min_len):
        for p, _ in positions:
            numer[p] += len(g) + (len(g) - 1) * 0.5
    return {labels[p]: numer[p] / len(paras[p]) for p in range(len(paras))}
