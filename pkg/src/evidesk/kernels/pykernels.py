"""Numpy fallback implementations of the scoring kernels.

These mirror evidesk.kernels._ckernels exactly; tests assert equivalence to
1e-12. Keep both in sync when touching either.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def bm25_accumulate(
    scores: np.ndarray,
    doc_indices: np.ndarray,
    term_freqs: np.ndarray,
    idf: float,
    k1: float,
    length_norm: np.ndarray,
):
    """Add one query term's contribution to the running score array.

    length_norm holds k1 * (1 - b + b * doc_len / avg_len) per document,
    precomputed once at index build. Each document appears at most once in a
    term's posting list, so fancy-index addition is safe.
    """
    tf = term_freqs
    contrib = idf * tf * (k1 + 1.0) / (tf + length_norm[doc_indices])
    scores[doc_indices] += contrib


def maxsim_scores(
    query: np.ndarray,
    tokens: np.ndarray,
    offsets: np.ndarray,
) -> np.ndarray:
    """Late-interaction scores: mean over query rows of max dot product.

    tokens is every chunk's token matrix stacked row-wise; offsets[i] and
    offsets[i+1] delimit chunk i's rows.
    """
    n = len(offsets) - 1
    out = np.zeros(n, dtype=np.float64)
    sims_all = query @ tokens.T
    for i in range(n):
        lo, hi = offsets[i], offsets[i + 1]
        out[i] = sims_all[:, lo:hi].max(axis=1).mean()
    return out
