# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gibbs kernels.

Mirror of ``_kernel_py.py``: identical splitmix64 stream and identical
floating-point operation order (the build disables FP contraction), so the
two kernels are bit-for-bit interchangeable.
"""

import numpy as np

cimport cython
from libc.stdint cimport int32_t, uint64_t

BACKEND = "compiled"

cdef double INV53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _next_uint64(uint64_t *state) nogil:
    cdef uint64_t z
    state[0] = state[0] + <uint64_t>0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double _next_double(uint64_t *state) nogil:
    return <double>(_next_uint64(state) >> 11) * INV53


def train_gibbs(words, doc_offsets, n_topics, vocab_size, alpha, beta,
                iterations, seed):
    """See ``_kernel_py.train_gibbs``; same contract, same bits."""
    cdef int32_t[::1] w_arr = np.ascontiguousarray(words, dtype=np.int32)
    cdef int32_t[::1] off = np.ascontiguousarray(doc_offsets, dtype=np.int32)
    cdef int k_topics = n_topics
    cdef int v_size = vocab_size
    cdef int n_docs = off.shape[0] - 1
    cdef int n_tokens = w_arr.shape[0]
    cdef double a = alpha
    cdef double b = beta
    cdef double beta_total = b * v_size
    cdef int iters = iterations
    cdef uint64_t state = <uint64_t>seed

    z_np = np.zeros(n_tokens, dtype=np.int32)
    dt_np = np.zeros((n_docs, k_topics), dtype=np.int32)
    tw_np = np.zeros((k_topics, v_size), dtype=np.int32)
    tt_np = np.zeros(k_topics, dtype=np.int32)
    cum_np = np.zeros(k_topics, dtype=np.float64)

    cdef int32_t[::1] z = z_np
    cdef int32_t[:, ::1] doc_topic = dt_np
    cdef int32_t[:, ::1] topic_word = tw_np
    cdef int32_t[::1] topic_totals = tt_np
    cdef double[::1] cum = cum_np

    cdef int d, i, k, kk, w, it
    cdef double total, u

    with nogil:
        for d in range(n_docs):
            for i in range(off[d], off[d + 1]):
                k = <int>(_next_double(&state) * k_topics)
                z[i] = k
                doc_topic[d, k] += 1
                topic_word[k, w_arr[i]] += 1
                topic_totals[k] += 1

        for it in range(iters):
            for d in range(n_docs):
                for i in range(off[d], off[d + 1]):
                    w = w_arr[i]
                    k = z[i]
                    doc_topic[d, k] -= 1
                    topic_word[k, w] -= 1
                    topic_totals[k] -= 1
                    total = 0.0
                    for kk in range(k_topics):
                        total += ((doc_topic[d, kk] + a) * (topic_word[kk, w] + b)
                                  / (topic_totals[kk] + beta_total))
                        cum[kk] = total
                    u = _next_double(&state) * total
                    k = 0
                    while k < k_topics - 1 and cum[k] <= u:
                        k += 1
                    z[i] = k
                    doc_topic[d, k] += 1
                    topic_word[k, w] += 1
                    topic_totals[k] += 1

    return z_np, dt_np, tw_np, tt_np


def infer_gibbs(words, topic_word, topic_totals, alpha, beta,
                burn_in, samples, seed):
    """See ``_kernel_py.infer_gibbs``; same contract, same bits."""
    cdef int32_t[::1] w_arr = np.ascontiguousarray(words, dtype=np.int32)
    cdef int32_t[:, ::1] tw = np.ascontiguousarray(topic_word, dtype=np.int32)
    cdef int32_t[::1] totals = np.ascontiguousarray(topic_totals, dtype=np.int32)
    cdef int k_topics = tw.shape[0]
    cdef int v_size = tw.shape[1]
    cdef int n_tokens = w_arr.shape[0]
    cdef double a = alpha
    cdef double b = beta
    cdef double beta_total = b * v_size
    cdef int n_burn = burn_in
    cdef int n_samples = samples
    cdef uint64_t state = <uint64_t>seed
    cdef double denom = n_tokens + k_topics * a

    z_np = np.zeros(n_tokens, dtype=np.int32)
    local_np = np.zeros(k_topics, dtype=np.int32)
    cum_np = np.zeros(k_topics, dtype=np.float64)
    acc_np = np.zeros(k_topics, dtype=np.float64)
    theta_np = np.zeros(k_topics, dtype=np.float64)

    cdef int32_t[::1] z = z_np
    cdef int32_t[::1] local = local_np
    cdef double[::1] cum = cum_np
    cdef double[::1] acc = acc_np
    cdef double[::1] theta = theta_np

    cdef int i, k, kk, w, sweep
    cdef double total, u

    with nogil:
        for i in range(n_tokens):
            k = <int>(_next_double(&state) * k_topics)
            z[i] = k
            local[k] += 1

        for sweep in range(n_burn + n_samples):
            for i in range(n_tokens):
                w = w_arr[i]
                k = z[i]
                local[k] -= 1
                total = 0.0
                for kk in range(k_topics):
                    total += ((local[kk] + a) * (tw[kk, w] + b)
                              / (totals[kk] + beta_total))
                    cum[kk] = total
                u = _next_double(&state) * total
                k = 0
                while k < k_topics - 1 and cum[k] <= u:
                    k += 1
                z[i] = k
                local[k] += 1
            if sweep >= n_burn:
                for kk in range(k_topics):
                    acc[kk] += (local[kk] + a) / denom

        for kk in range(k_topics):
            theta[kk] = acc[kk] / n_samples

    return theta_np
