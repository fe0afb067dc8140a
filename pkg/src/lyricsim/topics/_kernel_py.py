"""Pure-Python Gibbs kernels.

This is the fallback when the compiled extension is unavailable, and the
reference semantics for it: same splitmix64 stream, same operation order,
so both produce bit-identical assignments and counts.  Keep any change here
mirrored in ``_kernel.pyx``.
"""

import numpy as np

from ._rng import SplitMix64

BACKEND = "pure"


def train_gibbs(words, doc_offsets, n_topics, vocab_size, alpha, beta,
                iterations, seed):
    """Collapsed Gibbs sweeps over token-topic assignments.

    ``words`` is the flat token stream (vocabulary indices), ``doc_offsets``
    the D+1 document boundaries.  Returns (z, doc_topic, topic_word,
    topic_totals) as int32 arrays reflecting the final sweep.
    """
    words = [int(w) for w in words]
    offsets = [int(o) for o in doc_offsets]
    n_docs = len(offsets) - 1
    k_topics = int(n_topics)
    rng = SplitMix64(seed)
    beta_total = beta * vocab_size

    z = [0] * len(words)
    doc_topic = [[0] * k_topics for _ in range(n_docs)]
    topic_word = [[0] * vocab_size for _ in range(k_topics)]
    topic_totals = [0] * k_topics

    for d in range(n_docs):
        row = doc_topic[d]
        for i in range(offsets[d], offsets[d + 1]):
            k = int(rng.next_double() * k_topics)
            z[i] = k
            row[k] += 1
            topic_word[k][words[i]] += 1
            topic_totals[k] += 1

    cum = [0.0] * k_topics
    for _ in range(iterations):
        for d in range(n_docs):
            row = doc_topic[d]
            for i in range(offsets[d], offsets[d + 1]):
                w = words[i]
                k = z[i]
                row[k] -= 1
                topic_word[k][w] -= 1
                topic_totals[k] -= 1
                total = 0.0
                for kk in range(k_topics):
                    total += ((row[kk] + alpha) * (topic_word[kk][w] + beta)
                              / (topic_totals[kk] + beta_total))
                    cum[kk] = total
                u = rng.next_double() * total
                k = 0
                while k < k_topics - 1 and cum[k] <= u:
                    k += 1
                z[i] = k
                row[k] += 1
                topic_word[k][w] += 1
                topic_totals[k] += 1

    return (np.array(z, dtype=np.int32),
            np.array(doc_topic, dtype=np.int32).reshape(n_docs, k_topics),
            np.array(topic_word, dtype=np.int32).reshape(k_topics, vocab_size),
            np.array(topic_totals, dtype=np.int32))


def infer_gibbs(words, topic_word, topic_totals, alpha, beta,
                burn_in, samples, seed):
    """Fold-in sampling for one document with frozen topic-word counts.

    Returns the float64 topic distribution averaged over the post-burn-in
    sweeps: mean of (local counts + alpha) / (doc length + K * alpha).
    """
    words = [int(w) for w in words]
    topic_word = np.asarray(topic_word)
    k_topics, vocab_size = topic_word.shape
    tw = [list(map(int, topic_word[k])) for k in range(k_topics)]
    totals = [int(t) for t in topic_totals]
    rng = SplitMix64(seed)
    beta_total = beta * vocab_size
    denom = len(words) + k_topics * alpha

    z = [0] * len(words)
    local = [0] * k_topics
    for i in range(len(words)):
        k = int(rng.next_double() * k_topics)
        z[i] = k
        local[k] += 1

    cum = [0.0] * k_topics
    acc = [0.0] * k_topics
    for sweep in range(burn_in + samples):
        for i, w in enumerate(words):
            k = z[i]
            local[k] -= 1
            total = 0.0
            for kk in range(k_topics):
                total += ((local[kk] + alpha) * (tw[kk][w] + beta)
                          / (totals[kk] + beta_total))
                cum[kk] = total
            u = rng.next_double() * total
            k = 0
            while k < k_topics - 1 and cum[k] <= u:
                k += 1
            z[i] = k
            local[k] += 1
        if sweep >= burn_in:
            for kk in range(k_topics):
                acc[kk] += (local[kk] + alpha) / denom

    return np.array([a / samples for a in acc], dtype=np.float64)
