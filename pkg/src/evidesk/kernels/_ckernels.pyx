# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels. Mirrors pykernels; keep both in sync."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def bm25_accumulate(
    cnp.float64_t[::1] scores,
    cnp.int32_t[::1] doc_indices,
    cnp.float64_t[::1] term_freqs,
    double idf,
    double k1,
    cnp.float64_t[::1] length_norm,
):
    cdef Py_ssize_t i, n = doc_indices.shape[0]
    cdef double tf
    cdef cnp.int32_t d
    for i in range(n):
        d = doc_indices[i]
        tf = term_freqs[i]
        scores[d] += idf * tf * (k1 + 1.0) / (tf + length_norm[d])


def maxsim_scores(
    cnp.float64_t[:, ::1] query,
    cnp.float64_t[:, ::1] tokens,
    cnp.int64_t[::1] offsets,
):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef Py_ssize_t m = query.shape[0]
    cdef Py_ssize_t dim = query.shape[1]
    out_arr = np.zeros(n, dtype=np.float64)
    cdef cnp.float64_t[::1] out = out_arr
    cdef Py_ssize_t i, q, t, k
    cdef cnp.int64_t lo, hi
    cdef double best, dot, total
    for i in range(n):
        lo = offsets[i]
        hi = offsets[i + 1]
        total = 0.0
        for q in range(m):
            best = -1e308
            for t in range(lo, hi):
                dot = 0.0
                for k in range(dim):
                    dot += query[q, k] * tokens[t, k]
                if dot > best:
                    best = dot
            total += best
        out[i] = total / m
    return out_arr
