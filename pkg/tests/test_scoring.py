import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngcluster import Cluster, UsefulPhrase, UsefulPhraseSet, cluster_weight, coeff, find_clusters, paragraph_weights
from ngcluster.oracle import OracleCluster, oracle_paragraph_weights, oracle_pipeline
from ngcluster.pipeline import run
from ngcluster.scoring import _weight

from conftest import corpora, corpus_of


def fake_useful(*lengths):
    return UsefulPhraseSet(
        [UsefulPhrase(i, tuple(range(1, n + 1)), (0, 1)) for i, n in enumerate(lengths)]
    )


def as_oracle_clusters(result):
    idx, useful = result.index, result.useful
    return [
        OracleCluster(
            tuple(sorted(tuple(idx.vocab.word(w) for w in useful[p].token_ids) for p in c.shared)),
            tuple(sorted(idx.para_label(m) for m in c.members)),
            c.weight,
        )
        for c in result.clusters
    ]


@pytest.mark.parametrize("n,expected", [(2, 2.5), (3, 4.0), (4, 5.5), (9, 13.0), (69, 103.0)])
def test_coeff(n, expected):
    assert coeff(n) == expected


def test_coeff_matches_equation_terms():
    for n in range(2, 80):
        assert coeff(n) == n + (n - 1) * 0.5


@pytest.mark.parametrize("n", [1, 0, -3])
def test_coeff_rejects_short(n):
    with pytest.raises(ValueError):
        coeff(n)


def test_weights_c2(c2):
    res = run(c2, n_best=10)
    by_para = {res.index.para_label(w.para_ref): w.weight for w in res.weights}
    assert by_para[("doc", 0)] == pytest.approx(5.5 / 9)
    assert by_para[("doc", 1)] == 1.1
    assert [w.para_ref for w in res.weights] == [0, 1]
    assert res.weights[0].word_count == 9


def test_weights_c1(c1):
    res = run(c1, n_best=10)
    assert [w.weight for w in res.weights] == [4 / 3, 4 / 3]


def test_paragraph_without_phrases_scores_zero():
    res = run(corpus_of("a b c", "a b c", "p q r"), n_best=10)
    zero = [w for w in res.weights if res.index.para_label(w.para_ref) == ("doc", 2)]
    assert zero[0].weight == 0 and zero[0].ngram_counts == {}
    assert res.weights[0] is zero[0]


def test_weight_formula_constructed():
    useful = fake_useful(2, 3)
    assert _weight({0: 1, 1: 1}, useful, 10) == 0.65
    assert _weight({0: 2, 1: 3}, useful, 20) == (2 * 2.5 + 3 * 4) / 20


@given(st.lists(st.integers(2, 12), min_size=1, max_size=5), st.data())
def test_weight_monotone_in_occurrences(lengths, data):
    useful = fake_useful(*lengths)
    counts = {i: data.draw(st.integers(0, 4)) for i in range(len(lengths))}
    words = data.draw(st.integers(1, 200))
    bumped = dict(counts)
    pid = data.draw(st.sampled_from(range(len(lengths))))
    bumped[pid] += 1
    expected = sum(c * (n + (n - 1) * 0.5) for c, n in zip(counts.values(), lengths)) / words
    assert _weight(counts, useful, words) == pytest.approx(expected, abs=1e-9)
    assert _weight(bumped, useful, words) > _weight(counts, useful, words)


@pytest.mark.parametrize(
    "members,lengths,expected",
    [(2, [4], 11.0), (15, [4], 82.5), (2, [9], 26.0), (3, [2, 3], 19.5)],
)
def test_cluster_weight(members, lengths, expected):
    useful = fake_useful(*lengths)
    cluster = Cluster(frozenset(range(len(lengths))), tuple(range(members)), 0.0)
    assert cluster_weight(cluster, useful) == expected


def test_cluster_weight_grows_with_members():
    useful = fake_useful(4)
    weights = [cluster_weight(Cluster(frozenset({0}), tuple(range(m)), 0.0), useful) for m in range(2, 10)]
    assert weights == sorted(set(weights))


def test_clusters_c2(c2):
    res = run(c2, n_best=10)
    assert len(res.clusters) == 1
    (cluster,) = res.clusters
    assert cluster.members == (0, 1) and cluster.weight == 11.0
    assert res.index.vocab.decode(res.useful[next(iter(cluster.shared))].token_ids) == "the set of numbers"


def test_clusters_c1(c1):
    (cluster,) = run(c1, n_best=10).clusters
    assert cluster.members == (0, 1) and cluster.weight == 8.0


def test_clusters_c0(c0):
    assert run(c0, n_best=10).clusters == []


def test_clusters_shared_subsets():
    # kept phrases: "b c d" (P1, P3) and "a b" (P1, P2)
    res = run(corpus_of("a b c d", "a b c x", "y b c d"), n_best=5)
    got = [(c.members, c.weight) for c in res.clusters]
    assert got == [((0, 1), 5.0), ((0, 2), 8.0)]


def test_cluster_expands_to_all_supersets():
    # P1 and P2 share {"a b c", "x y z"}; P3 shares only "a b c" with them.
    res = run(corpus_of("a b c q x y z", "a b c r x y z", "a b c s"), n_best=5)
    clusters = as_oracle_clusters(res)
    abc = [c for c in clusters if c.ngrams == (("a", "b", "c"),)]
    assert abc and abc[0].members == (("doc", 0), ("doc", 1), ("doc", 2))
    both = [c for c in clusters if len(c.ngrams) == 2]
    assert both[0].members == (("doc", 0), ("doc", 1))
    assert both[0].weight == 2 * (4 + 4)


def test_find_clusters_direct_call(c2):
    res = run(c2, n_best=10)
    assert find_clusters(res.index, res.useful, paragraph_weights(res.index, res.useful)) == res.clusters


@settings(max_examples=150, deadline=None)
@given(corpora(max_paragraphs=8), st.integers(0, 4))
def test_cluster_soundness_and_order(corpus, n_best):
    res = run(corpus, n_best=n_best)
    para_of = res.index.paragraph_of_slot()
    for c in res.clusters:
        assert c.shared and len(c.members) >= 2
        for pid in c.shared:
            owners = {int(para_of[s]) for s in res.useful[pid].occurrences}
            assert set(c.members) <= owners
        assert c.weight == cluster_weight(c, res.useful)
    assert [c.weight for c in res.clusters] == sorted(c.weight for c in res.clusters)
    assert len({c.shared for c in res.clusters}) == len(res.clusters)


@settings(max_examples=150, deadline=None)
@given(corpora(max_paragraphs=8), st.integers(0, 4))
def test_clusters_match_oracle(corpus, n_best):
    assert as_oracle_clusters(run(corpus, n_best=n_best)) == oracle_pipeline(corpus, n_best)


@settings(max_examples=100, deadline=None)
@given(corpora(max_paragraphs=8), st.integers(0, 4))
def test_weights_match_oracle(corpus, n_best):
    res = run(corpus, n_best=n_best)
    got = {res.index.para_label(w.para_ref): w.weight for w in res.weights}
    assert got == oracle_paragraph_weights(corpus, n_best)
