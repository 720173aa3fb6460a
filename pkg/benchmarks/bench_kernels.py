"""Time the compiled and pure-Python kernels on synthetic corpora.

    python benchmarks/bench_kernels.py [--tokens 50000 200000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from ngcluster import TokenizedCorpus, build_vocabulary, kernels, translate_corpus
from ngcluster.phrases import compute_phrase_lengths


def synthetic(n_tokens, vocab_size=20_000, seed=0):
    rng = np.random.default_rng(seed)
    p = 1.0 / np.arange(1, vocab_size + 1)
    ids = rng.choice(vocab_size, size=n_tokens, p=p / p.sum())
    words = np.array([f"w{i}" for i in range(vocab_size)], dtype=object)[ids].tolist()
    paras, pos = [], 0
    while pos < n_tokens:
        k = int(rng.integers(20, 200))
        paras.append(words[pos : pos + k])
        pos += k
    return TokenizedCorpus([("bench.txt", paras)])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tokens", type=int, nargs="+", default=[50_000, 200_000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if kernels.compiled_available() else [])
    print(f"{'tokens':>8} {'kernel':<14} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for n in args.tokens:
        corpus = synthetic(n)
        vocab = build_vocabulary(corpus)
        idx = translate_corpus(corpus, vocab)
        rows = {
            "translate": lambda b: translate_corpus(corpus, vocab, backend=b),
            "phrase_lengths": lambda b: compute_phrase_lengths(idx, backend=b),
        }
        for name, fn in rows.items():
            t = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
            speed = f"{t['python'] / t['compiled']:8.1f}x" if "compiled" in t else "      n/a"
            print(f"{n:>8} {name:<14} " + " ".join(f"{t[b]:>9.3f}s" for b in backends) + speed)


if __name__ == "__main__":
    main()
