"""Time the compiled scoring kernels against the numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --docs 200000 --repeats 7

Both backends are imported directly so one process measures both; the
EVIDESK_KERNELS switch is for selecting a backend at import time in the
library itself, not here. Outputs best-of-N wall times and the speedup.
"""

import argparse
import time

import numpy as np

from evidesk.kernels import pykernels

try:
    from evidesk.kernels import _ckernels as ckernels
except ImportError:
    ckernels = None


def bm25_workload(rng, n_docs, n_terms, postings_per_term):
    norm = rng.uniform(0.3, 3.0, size=n_docs)
    terms = []
    for _ in range(n_terms):
        count = min(postings_per_term, n_docs)
        idxs = np.sort(rng.choice(n_docs, size=count, replace=False)).astype(np.int32)
        tfs = rng.integers(1, 9, size=count).astype(np.float64)
        terms.append((idxs, tfs, float(rng.uniform(0.05, 4.0))))
    return norm, terms


def run_bm25(kernels, n_docs, norm, terms):
    scores = np.zeros(n_docs)
    for idxs, tfs, idf in terms:
        kernels.bm25_accumulate(scores, idxs, tfs, idf, 1.2, norm)
    return scores


def maxsim_workload(rng, n_chunks, tokens_per_chunk, query_tokens, dim):
    sizes = rng.integers(1, tokens_per_chunk + 1, size=n_chunks)
    offsets = np.zeros(n_chunks + 1, dtype=np.int64)
    offsets[1:] = np.cumsum(sizes)
    tokens = rng.normal(size=(int(offsets[-1]), dim))
    tokens /= np.linalg.norm(tokens, axis=1, keepdims=True)
    query = rng.normal(size=(query_tokens, dim))
    query /= np.linalg.norm(query, axis=1, keepdims=True)
    return query, tokens, offsets


def best_of(repeats, fn):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def report(name, py_time, c_time):
    if c_time is None:
        print(f"{name:<22} python {py_time * 1e3:8.2f} ms   compiled not built")
        return
    print(
        f"{name:<22} python {py_time * 1e3:8.2f} ms   "
        f"compiled {c_time * 1e3:8.2f} ms   {py_time / c_time:5.1f}x"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--docs", type=int, default=100_000, help="bm25 corpus size")
    parser.add_argument("--terms", type=int, default=12, help="query terms for bm25")
    parser.add_argument("--postings", type=int, default=20_000, help="postings per term")
    parser.add_argument("--chunks", type=int, default=2_000, help="chunks for maxsim")
    parser.add_argument("--chunk-tokens", type=int, default=40, help="max tokens per chunk")
    parser.add_argument("--query-tokens", type=int, default=8)
    parser.add_argument("--dim", type=int, default=64)
    parser.add_argument("--repeats", type=int, default=5, help="best-of-N timing")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)

    norm, terms = bm25_workload(rng, args.docs, args.terms, args.postings)
    py_scores = run_bm25(pykernels, args.docs, norm, terms)
    py_bm25 = best_of(args.repeats, lambda: run_bm25(pykernels, args.docs, norm, terms))
    c_bm25 = None
    if ckernels is not None:
        c_scores = run_bm25(ckernels, args.docs, norm, terms)
        np.testing.assert_allclose(c_scores, py_scores, atol=1e-12)
        c_bm25 = best_of(args.repeats, lambda: run_bm25(ckernels, args.docs, norm, terms))

    query, tokens, offsets = maxsim_workload(
        rng, args.chunks, args.chunk_tokens, args.query_tokens, args.dim
    )
    py_out = pykernels.maxsim_scores(query, tokens, offsets)
    py_maxsim = best_of(
        args.repeats, lambda: pykernels.maxsim_scores(query, tokens, offsets)
    )
    c_maxsim = None
    if ckernels is not None:
        c_out = ckernels.maxsim_scores(query, tokens, offsets)
        np.testing.assert_allclose(np.asarray(c_out), py_out, atol=1e-12)
        c_maxsim = best_of(
            args.repeats, lambda: ckernels.maxsim_scores(query, tokens, offsets)
        )

    print(
        f"bm25: {args.docs} docs, {args.terms} terms x {args.postings} postings; "
        f"maxsim: {args.chunks} chunks, dim {args.dim}; best of {args.repeats}"
    )
    report("bm25_accumulate", py_bm25, c_bm25)
    report("maxsim_scores", py_maxsim, c_maxsim)


if __name__ == "__main__":
    main()
