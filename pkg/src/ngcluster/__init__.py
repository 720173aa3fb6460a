"""Repeated n-gram discovery and paragraph clustering over a grouped word index."""
from ngcluster.corpus import (
    RawDocument,
    TokenizedCorpus,
    TokenizerConfig,
    Vocabulary,
    build_vocabulary,
    read_corpus_dir,
    segment_and_tokenize,
)
from ngcluster.index import GroupedIndex, translate_corpus, traverse_document, traverse_paragraph
from ngcluster.kernels import BACKEND
from ngcluster.phrases import (
    PhraseTable,
    UsefulPhrase,
    UsefulPhraseSet,
    compute_phrase_lengths,
    phrase_frequency,
    select_useful,
    splice_out,
)
from ngcluster.scoring import (
    Cluster,
    ParagraphWeight,
    cluster_weight,
    coeff,
    find_clusters,
    paragraph_weights,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Cluster",
    "GroupedIndex",
    "ParagraphWeight",
    "PhraseTable",
    "RawDocument",
    "TokenizedCorpus",
    "TokenizerConfig",
    "UsefulPhrase",
    "UsefulPhraseSet",
    "Vocabulary",
    "build_vocabulary",
    "cluster_weight",
    "coeff",
    "compute_phrase_lengths",
    "find_clusters",
    "paragraph_weights",
    "phrase_frequency",
    "read_corpus_dir",
    "segment_and_tokenize",
    "select_useful",
    "splice_out",
    "translate_corpus",
    "traverse_document",
    "traverse_paragraph",
]
