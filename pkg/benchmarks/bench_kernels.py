#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot loops on synthetic workloads:

  * score_document  -- per-class log-score accumulation, as used by
    classification over a large corpus
  * strip_non_letters -- the per-character case-folding scan

Run after installing the package:

    python benchmarks/bench_kernels.py [--docs N] [--vocab V] [--repeat R]
"""

import argparse
import math
import random
import time
from array import array

from kicaumine._kernels import _pure

try:
    from kicaumine._kernels import _native
except ImportError:
    _native = None


def build_scoring_workload(n_docs, vocab_size, n_classes, seed):
    rng = random.Random(seed)
    log_priors = array("d", (math.log(rng.uniform(0.1, 1.0)) for _ in range(n_classes)))
    log_lik = array(
        "d", (math.log(rng.uniform(1e-5, 1.0)) for _ in range(n_classes * vocab_size))
    )
    oov_log_lik = array("d", (math.log(rng.uniform(1e-5, 1.0)) for _ in range(n_classes)))
    docs = []
    for _ in range(n_docs):
        n_tokens = rng.randint(3, 25)
        ids = array("q", (rng.randrange(vocab_size) for _ in range(n_tokens)))
        counts = array("d", (float(rng.randint(1, 4)) for _ in range(n_tokens)))
        docs.append((ids, counts, float(rng.randint(0, 3))))
    return log_priors, log_lik, oov_log_lik, docs


def time_scoring(impl, workload, repeat):
    log_priors, log_lik, oov_log_lik, docs = workload
    out = array("d", bytes(8 * len(log_priors)))
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        for ids, counts, oov in docs:
            impl.score_document(
                log_priors, log_lik, oov_log_lik, ids, counts, oov, False, out
            )
        best = min(best, time.perf_counter() - started)
    return best


def build_text_workload(n_docs, seed):
    rng = random.Random(seed)
    pieces = [
        "Pemilihan GUBERNUR jawa barat 2018!", "#pilgubJabar", "@user:",
        "http://t.co/xyz", "bagus sekali :)", "kalah lagi :(", "Café İstanbul",
        "1234567890", "RT RT", "mantap-mantap...", "ΣΙΓΜΑ ёлка",
    ]
    return [
        " ".join(rng.choice(pieces) for _ in range(rng.randint(3, 12))).lower()
        for _ in range(n_docs)
    ]


def time_text(impl, texts, repeat):
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        for text in texts:
            impl.strip_non_letters(text)
        best = min(best, time.perf_counter() - started)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=20_000)
    parser.add_argument("--vocab", type=int, default=5_000)
    parser.add_argument("--classes", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    if _native is None:
        print("compiled kernels not available; benchmarking the fallback only")

    scoring = build_scoring_workload(args.docs, args.vocab, args.classes, args.seed)
    texts = build_text_workload(args.docs, args.seed)

    rows = []
    pure_score = time_scoring(_pure, scoring, args.repeat)
    rows.append(("score_document", "pure", pure_score, args.docs / pure_score, ""))
    if _native is not None:
        native_score = time_scoring(_native, scoring, args.repeat)
        rows.append(
            (
                "score_document",
                "native",
                native_score,
                args.docs / native_score,
                f"{pure_score / native_score:.1f}x",
            )
        )

    pure_text = time_text(_pure, texts, args.repeat)
    rows.append(("strip_non_letters", "pure", pure_text, args.docs / pure_text, ""))
    if _native is not None:
        native_text = time_text(_native, texts, args.repeat)
        rows.append(
            (
                "strip_non_letters",
                "native",
                native_text,
                args.docs / native_text,
                f"{pure_text / native_text:.1f}x",
            )
        )

    print(f"{args.docs} documents, vocabulary {args.vocab}, {args.classes} classes")
    print(f"{'kernel':<20}{'backend':<9}{'best time':>11}{'docs/s':>12}{'speedup':>9}")
    for kernel, backend, seconds, rate, speedup in rows:
        print(f"{kernel:<20}{backend:<9}{seconds:>10.3f}s{rate:>12,.0f}{speedup:>9}")


if __name__ == "__main__":
    main()
