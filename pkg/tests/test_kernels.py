"""Compiled kernels agree with the numpy fallback."""

import random

import numpy as np
import pytest

from evidesk.kernels import pykernels

try:
    from evidesk.kernels import _ckernels as ckernels
except ImportError:
    ckernels = None

needs_compiled = pytest.mark.skipif(ckernels is None, reason="compiled kernels not built")


def random_postings(rng, n_docs):
    count = rng.randint(1, n_docs)
    idxs = np.array(sorted(rng.sample(range(n_docs), count)), dtype=np.int32)
    tfs = np.array([rng.randint(1, 9) for _ in range(count)], dtype=np.float64)
    return idxs, tfs


@needs_compiled
class TestBackendEquivalence:
    def test_bm25_accumulate_matches(self):
        rng = random.Random(501)
        for _ in range(40):
            n_docs = rng.randint(1, 60)
            norm = np.array([rng.uniform(0.3, 3.0) for _ in range(n_docs)])
            s_py = np.zeros(n_docs)
            s_c = np.zeros(n_docs)
            for _ in range(rng.randint(1, 6)):
                idxs, tfs = random_postings(rng, n_docs)
                idf = rng.uniform(0.01, 4.0)
                pykernels.bm25_accumulate(s_py, idxs, tfs, idf, 1.2, norm)
                ckernels.bm25_accumulate(s_c, idxs, tfs, idf, 1.2, norm)
            np.testing.assert_allclose(s_c, s_py, atol=1e-12)

    def test_maxsim_matches(self):
        rng = random.Random(502)
        for _ in range(40):
            dim = rng.choice([4, 16, 64])
            n_chunks = rng.randint(1, 12)
            sizes = [rng.randint(1, 20) for _ in range(n_chunks)]
            offsets = np.zeros(n_chunks + 1, dtype=np.int64)
            offsets[1:] = np.cumsum(sizes)
            tokens = np.random.RandomState(rng.randint(0, 10**6)).normal(
                size=(offsets[-1], dim)
            )
            tokens /= np.linalg.norm(tokens, axis=1, keepdims=True)
            query = np.random.RandomState(rng.randint(0, 10**6)).normal(
                size=(rng.randint(1, 8), dim)
            )
            query /= np.linalg.norm(query, axis=1, keepdims=True)
            tokens = np.ascontiguousarray(tokens)
            query = np.ascontiguousarray(query)
            np.testing.assert_allclose(
                ckernels.maxsim_scores(query, tokens, offsets),
                pykernels.maxsim_scores(query, tokens, offsets),
                atol=1e-9,
            )


class TestBackendSelection:
    def test_active_backend_is_reported(self):
        from evidesk import kernels

        assert kernels.ACTIVE_BACKEND in ("compiled", "python")

    def test_python_backend_forced_in_subprocess(self):
        import subprocess
        import sys

        out = subprocess.run(
            [sys.executable, "-c", "import evidesk.kernels as k; print(k.ACTIVE_BACKEND)"],
            env={"EVIDESK_KERNELS": "python", "PATH": "/usr/bin:/bin"},
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == "python"
