"""Paragraph correlation weights and clusters of paragraphs sharing phrases."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Set, Tuple

from ngcluster.index import NONE, GroupedIndex, traverse_paragraph
from ngcluster.phrases import UsefulPhraseSet


def coeff(n: int) -> float:
    """Weight of one n-gram occurrence: n + (n - 1) * 0.5."""
    if n < 2:
        raise ValueError(f"phrase length must be >= 2, got {n}")
    return 1.5 * n - 0.5


@dataclass(frozen=True)
class ParagraphWeight:
    para_ref: int
    weight: float
    ngram_counts: Dict[int, int]
    word_count: int


@dataclass(frozen=True)
class Cluster:
    shared: FrozenSet[int]
    members: Tuple[int, ...]
    weight: float


def _weight(counts: Dict[int, int], useful: UsefulPhraseSet, word_count: int) -> float:
    numerator = sum(c * coeff(useful[pid].length) for pid, c in counts.items())
    return numerator / word_count if word_count else 0.0


def paragraph_weights(index: GroupedIndex, useful: UsefulPhraseSet) -> List[ParagraphWeight]:
    """Score every paragraph; returned in ascending weight order.

    Each anchored occurrence of a useful phrase counts once in the numerator.
    Ties keep (doc_id, paragraph ordinal) order.
    """
    anchors = useful.slot_to_phrase
    out = []
    for ref, rec in enumerate(index.para_table):
        counts = Counter(
            anchors[s] for s, _ in traverse_paragraph(index, ref) if s in anchors
        )
        out.append(ParagraphWeight(ref, _weight(counts, useful, rec.word_count), dict(counts), rec.word_count))
    out.sort(key=lambda pw: (pw.weight,) + index.para_label(pw.para_ref))
    return out


def cluster_weight(cluster: Cluster, useful: UsefulPhraseSet) -> float:
    """Member count times the summed per-length coefficients of the shared phrases."""
    return len(cluster.members) * sum(coeff(useful[pid].length) for pid in cluster.shared)


def cluster_sort_key(cluster: Cluster, useful: UsefulPhraseSet) -> tuple:
    return (
        cluster.weight,
        -len(cluster.members),
        tuple(sorted(useful[pid].token_ids for pid in cluster.shared)),
    )


def find_clusters(
    index: GroupedIndex, useful: UsefulPhraseSet, weights: List[ParagraphWeight]
) -> List[Cluster]:
    """Clusters of paragraphs keyed by the phrase subsets that paragraph pairs share.

    For each paragraph, the phrase chains lead to every other paragraph that
    shares a phrase with it. Each distinct shared subset becomes one cluster
    whose members are all paragraphs containing the whole subset. Sorted
    ascending by weight, then larger clusters first, then by phrase tokens.
    """
    table = useful.table
    owner = index.paragraph_of_slot().tolist() if useful.entries else []
    nxt = table.next_phrase.tolist() if table is not None else []
    prv = table.prev_phrase.tolist() if table is not None else []

    containing: Dict[int, Set[int]] = {}
    for entry in useful:
        containing[entry.phrase_id] = {owner[s] for s in entry.occurrences}

    signature = {pw.para_ref: frozenset(pw.ngram_counts) for pw in weights}
    clusters: Dict[FrozenSet[int], Cluster] = {}
    for pw in weights:
        own = signature[pw.para_ref]
        if not own:
            continue
        partners: Set[int] = set()
        for pid in own:
            anchor = useful[pid].occurrences[0]
            s = anchor
            while prv[s] != NONE:
                s = prv[s]
            while s != NONE:
                partners.add(owner[s])
                s = nxt[s]
        partners.discard(pw.para_ref)
        for q in sorted(partners):
            shared = own & signature[q]
            if shared in clusters:
                continue
            members = set.intersection(*(containing[pid] for pid in shared))
            draft = Cluster(shared, tuple(sorted(members)), 0.0)
            clusters[shared] = Cluster(shared, draft.members, cluster_weight(draft, useful))

    return sorted(clusters.values(), key=lambda c: cluster_sort_key(c, useful))

