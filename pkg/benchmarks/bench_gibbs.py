#!/usr/bin/env python3
"""Benchmark the compiled Gibbs kernel against the pure-Python fallback.

Both kernels are bit-identical in output (asserted here too); this measures
the speed gap on a synthetic corpus shaped like real training work.

Usage: python benchmarks/bench_gibbs.py [--docs 400] [--len 60] [--k 50]
"""

import argparse
import time

import numpy as np

from lyricsim.topics import _kernel_py

try:
    from lyricsim.topics import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def synthetic(docs, doc_len, vocab, seed=0):
    rng = np.random.default_rng(seed)
    words = rng.integers(0, vocab, size=docs * doc_len).astype(np.int32)
    offsets = np.arange(0, docs * doc_len + 1, doc_len, dtype=np.int32)
    return words, offsets


def run(kernel, words, offsets, k, vocab, iterations, seed):
    start = time.perf_counter()
    out = kernel.train_gibbs(words, offsets, k, vocab, 50.0 / k, 0.01,
                             iterations, seed)
    return time.perf_counter() - start, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--docs", type=int, default=400)
    parser.add_argument("--len", dest="doc_len", type=int, default=60)
    parser.add_argument("--vocab", type=int, default=800)
    parser.add_argument("--k", type=int, default=50)
    parser.add_argument("--iterations", type=int, default=30)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    words, offsets = synthetic(args.docs, args.doc_len, args.vocab, args.seed)
    token_sweeps = len(words) * args.iterations
    print(f"{args.docs} docs x {args.doc_len} tokens, K={args.k}, "
          f"V={args.vocab}, {args.iterations} sweeps "
          f"({token_sweeps:,} token updates)")

    pure_dt, pure_out = run(_kernel_py, words, offsets, args.k, args.vocab,
                            args.iterations, args.seed)
    print(f"pure python: {pure_dt:8.3f} s  "
          f"({token_sweeps / pure_dt / 1e6:6.2f} M updates/s)")

    if _kernel_c is None:
        print("compiled kernel unavailable; nothing to compare")
        return

    comp_dt, comp_out = run(_kernel_c, words, offsets, args.k, args.vocab,
                            args.iterations, args.seed)
    print(f"compiled:    {comp_dt:8.3f} s  "
          f"({token_sweeps / comp_dt / 1e6:6.2f} M updates/s)")
    print(f"speedup:     {pure_dt / comp_dt:8.1f}x")

    identical = all(np.array_equal(a, b) for a, b in zip(pure_out, comp_out))
    print(f"outputs bit-identical: {identical}")
    if not identical:
        raise SystemExit("kernel parity violation")


if __name__ == "__main__":
    main()
