import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ngcluster import TokenizedCorpus


def corpus_of(*paragraphs, doc="doc"):
    """Single-document corpus from space-separated paragraph strings."""
    return TokenizedCorpus([(doc, [p.split() for p in paragraphs])])


@pytest.fixture
def c0():
    return corpus_of("a b c d")


@pytest.fixture
def c1():
    return corpus_of("the cat sat", "the cat sat")


@pytest.fixture
def c2():
    return corpus_of("the set of numbers is the set of values", "the set of numbers grows")


@pytest.fixture
def c3():
    return corpus_of("the cat and the dog and the fish")


def random_corpus(rng: random.Random, max_tokens=2000, max_vocab=50, max_paragraphs=20, max_docs=3):
    """Random corpus within the given bounds; vocabulary size is drawn per corpus."""
    vocab = [f"w{i}" for i in range(rng.randint(1, max_vocab))]
    n_paras = rng.randint(1, max_paragraphs)
    total = rng.randint(n_paras, max(n_paras, max_tokens))
    # split `total` tokens into n_paras nonempty paragraphs
    cuts = sorted(rng.sample(range(1, total), n_paras - 1)) if n_paras > 1 else []
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    paras = [[rng.choice(vocab) for _ in range(k)] for k in sizes]
    n_docs = rng.randint(1, min(max_docs, n_paras))
    doc_cuts = sorted(rng.sample(range(1, n_paras), n_docs - 1)) if n_docs > 1 else []
    bounds = list(zip([0] + doc_cuts, doc_cuts + [n_paras]))
    return TokenizedCorpus([(f"d{i:02d}.txt", paras[a:b]) for i, (a, b) in enumerate(bounds)])


def write_corpus(corpus: TokenizedCorpus, root: Path) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    for doc_id, paras in corpus.documents:
        path = root / doc_id
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n\n".join(" ".join(p) for p in paras) + "\n", encoding="utf-8")
    return root


@st.composite
def corpora(draw, max_vocab=6, max_paragraphs=6, max_len=25):
    vocab = [f"t{i}" for i in range(draw(st.integers(1, max_vocab)))]
    word = st.sampled_from(vocab)
    para = st.lists(word, min_size=1, max_size=max_len)
    docs = draw(st.lists(st.lists(para, min_size=0, max_size=max_paragraphs), min_size=1, max_size=3))
    return TokenizedCorpus([(f"doc{i}", paras) for i, paras in enumerate(docs)])


# Acceptance criteria report, printed at the end of the run.
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
