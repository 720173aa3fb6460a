"""Reading, paragraph segmentation, tokenization and vocabulary construction."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

SENTINEL_ID = 0

PARAGRAPH_MODES = ("blank-line", "newline")

_BLANK_LINES = re.compile(r"\n[ \t\r\f\v]*\n\s*")


@dataclass(frozen=True)
class TokenizerConfig:
    case_fold: bool = False
    paragraph_mode: str = "blank-line"

    def __post_init__(self) -> None:
        if self.paragraph_mode not in PARAGRAPH_MODES:
            raise ValueError(
                f"paragraph_mode must be one of {PARAGRAPH_MODES}, got {self.paragraph_mode!r}"
            )


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    body: str


@dataclass
class TokenizedCorpus:
    """Documents as ordered lists of paragraphs, each a list of tokens."""

    documents: List[Tuple[str, List[List[str]]]] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen = set()
        for doc_id, paragraphs in self.documents:
            if doc_id in seen:
                raise ValueError(f"duplicate doc_id {doc_id!r}")
            seen.add(doc_id)
            for para in paragraphs:
                if not para:
                    raise ValueError(f"empty paragraph in {doc_id!r}")
                if any(not tok for tok in para):
                    raise ValueError(f"empty token in {doc_id!r}")

    @property
    def token_count(self) -> int:
        return sum(len(p) for _, paras in self.documents for p in paras)

    @property
    def paragraph_count(self) -> int:
        return sum(len(paras) for _, paras in self.documents)

    def iter_tokens(self) -> Iterable[str]:
        for _, paras in self.documents:
            for para in paras:
                yield from para

    def paragraphs(self) -> Iterable[Tuple[str, int, List[str]]]:
        """Yield ``(doc_id, ordinal, tokens)`` in corpus order."""
        for doc_id, paras in self.documents:
            for ordinal, para in enumerate(paras):
                yield doc_id, ordinal, para

    @classmethod
    def from_texts(
        cls, docs: Sequence[Tuple[str, str]], cfg: TokenizerConfig | None = None
    ) -> "TokenizedCorpus":
        cfg = cfg or TokenizerConfig()
        return cls(
            [
                (doc_id, segment_and_tokenize(RawDocument(doc_id, body), cfg))
                for doc_id, body in docs
            ]
        )


def segment_and_tokenize(raw: RawDocument, cfg: TokenizerConfig | None = None) -> List[List[str]]:
    """Split a document body into paragraphs of whitespace-delimited tokens.

    Punctuation stays attached to its token. In ``blank-line`` mode paragraphs
    are separated by one or more blank lines; in ``newline`` mode every
    non-empty line is a paragraph.
    """
    cfg = cfg or TokenizerConfig()
    text = raw.body
    if cfg.case_fold:
        text = text.casefold()
    if cfg.paragraph_mode == "newline":
        chunks = text.splitlines()
    else:
        chunks = _BLANK_LINES.split(text.replace("\r\n", "\n"))
    paragraphs = []
    for chunk in chunks:
        tokens = chunk.split()
        if tokens:
            paragraphs.append(tokens)
    return paragraphs


def read_corpus_dir(root: str | Path, cfg: TokenizerConfig | None = None) -> TokenizedCorpus:
    """Load every regular file under ``root`` (sorted, hidden files skipped).

    The doc_id is the file path relative to ``root`` in POSIX form.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {root}")
    docs = []
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        rel = path.relative_to(root)
        if any(part.startswith(".") for part in rel.parts):
            continue
        body = path.read_text(encoding="utf-8")
        docs.append((rel.as_posix(), body))
    return TokenizedCorpus.from_texts(docs, cfg)


@dataclass(frozen=True)
class Vocabulary:
    """Word/id mapping with ids 1..V in descending frequency order.

    ``frequency`` and ``group_offset`` are indexed by id; index 0 belongs to
    the paragraph sentinel. ``group_offset`` has V + 2 entries so that
    ``group_offset[V + 1]`` is the total token count.
    """

    id_to_word: Tuple[str, ...]  # id_to_word[0] is the sentinel placeholder
    frequency: np.ndarray
    group_offset: np.ndarray
    sentinel_id: int = SENTINEL_ID
    word_to_id: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "word_to_id", {w: i for i, w in enumerate(self.id_to_word) if i}
        )

    @property
    def size(self) -> int:
        return len(self.id_to_word) - 1

    def __len__(self) -> int:
        return self.size

    def id_of(self, word: str) -> int:
        try:
            return self.word_to_id[word]
        except KeyError:
            raise KeyError(f"token {word!r} not in vocabulary") from None

    def word(self, wid: int) -> str:
        if wid == self.sentinel_id:
            raise KeyError("sentinel id has no word")
        return self.id_to_word[wid]

    def decode(self, ids: Iterable[int]) -> str:
        return " ".join(self.id_to_word[i] for i in ids)

    def group_range(self, wid: int) -> range:
        return range(int(self.group_offset[wid]), int(self.group_offset[wid + 1]))

    @classmethod
    def from_frequencies(cls, words: Sequence[str], freqs: Sequence[int]) -> "Vocabulary":
        """Rebuild from words already listed in id order (1..V)."""
        frequency = np.zeros(len(words) + 1, dtype=np.int64)
        frequency[1:] = freqs
        group_offset = np.zeros(len(words) + 2, dtype=np.int64)
        np.cumsum(frequency[1:], out=group_offset[2:])
        return cls(("",) + tuple(words), frequency, group_offset)


def build_vocabulary(corpus: TokenizedCorpus) -> Vocabulary:
    """Assign ids by descending frequency; ties go to the earlier first appearance."""
    counts = Counter(corpus.iter_tokens())
    # Counter preserves insertion order, i.e. first appearance; sort is stable.
    ranked = sorted(counts.items(), key=lambda kv: -kv[1])
    return Vocabulary.from_frequencies([w for w, _ in ranked], [c for _, c in ranked])
