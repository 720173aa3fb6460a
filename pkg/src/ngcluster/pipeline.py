"""End-to-end helpers tying the stages together."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from ngcluster.corpus import TokenizedCorpus, build_vocabulary
from ngcluster.index import GroupedIndex, translate_corpus
from ngcluster.phrases import PhraseTable, UsefulPhraseSet, compute_phrase_lengths, select_useful
from ngcluster.scoring import Cluster, ParagraphWeight, find_clusters, paragraph_weights


@dataclass
class PipelineResult:
    index: GroupedIndex
    table: PhraseTable
    useful: UsefulPhraseSet
    weights: List[ParagraphWeight]
    clusters: List[Cluster]


def build(corpus: TokenizedCorpus, backend: str | None = None):
    """Vocabulary, grouped index and maximal phrase table for a corpus."""
    index = translate_corpus(corpus, build_vocabulary(corpus), backend=backend)
    return index, compute_phrase_lengths(index, backend=backend)


def analyse(
    index: GroupedIndex,
    table: PhraseTable,
    n_best: int = 20,
    min_len: int = 2,
    max_total: Optional[int] = None,
) -> PipelineResult:
    useful = select_useful(table, index, n_best, min_len=min_len, max_total=max_total)
    weights = paragraph_weights(index, useful)
    clusters = find_clusters(index, useful, weights)
    return PipelineResult(index, table, useful, weights, clusters)


def run(corpus: TokenizedCorpus, n_best: int = 20, min_len: int = 2, max_total: Optional[int] = None) -> PipelineResult:
    index, table = build(corpus)
    return analyse(index, table, n_best, min_len, max_total)
