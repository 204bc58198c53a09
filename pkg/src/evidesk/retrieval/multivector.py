"""Late-interaction retrieval over per-token embedding matrices."""

from __future__ import annotations

import numpy as np

from evidesk import kernels
from evidesk.errors import DimensionMismatch
from evidesk.retrieval.candidates import Candidate
from evidesk.retrieval.dense import _check_unit_rows


class MultiVectorIndex:
    """Token matrices stacked into one block, delimited by offsets.

    A chunk's score against a query matrix is the mean over query tokens of
    the best dot product against any chunk token. With unit rows on both
    sides each term lies in [-1, 1], so the mean does too.
    """

    def __init__(self, dimension: int):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.chunk_ids: list[str] = []
        self.tokens = np.zeros((0, dimension), dtype=np.float64)
        self.offsets = np.zeros(1, dtype=np.int64)

    def build(self, items: list[tuple[str, np.ndarray]]) -> "MultiVectorIndex":
        blocks = []
        offsets = [0]
        for chunk_id, matrix in items:
            matrix = np.asarray(matrix, dtype=np.float64)
            if matrix.ndim != 2 or matrix.shape[1] != self.dimension:
                raise DimensionMismatch(f"{chunk_id}: {matrix.shape}")
            if matrix.shape[0] == 0:
                raise ValueError(f"{chunk_id}: chunk needs at least one token vector")
            blocks.append(matrix)
            offsets.append(offsets[-1] + matrix.shape[0])
            self.chunk_ids.append(chunk_id)
        if blocks:
            self.tokens = np.ascontiguousarray(np.vstack(blocks))
            _check_unit_rows(self.tokens, "token embeddings")
        self.offsets = np.array(offsets, dtype=np.int64)
        return self

    def search(self, query_matrix: np.ndarray, threshold: float, k: int) -> list[Candidate]:
        query_matrix = np.ascontiguousarray(np.asarray(query_matrix, dtype=np.float64))
        if query_matrix.ndim != 2 or query_matrix.shape[1] != self.dimension:
            raise DimensionMismatch(str(query_matrix.shape))
        if query_matrix.shape[0] == 0:
            raise ValueError("query needs at least one token vector")
        _check_unit_rows(query_matrix, "query token embeddings")
        if not self.chunk_ids:
            return []
        scores = kernels.maxsim_scores(query_matrix, self.tokens, self.offsets)
        hits = [
            (float(scores[i]), self.chunk_ids[i])
            for i in np.flatnonzero(scores >= threshold)
        ]
        hits.sort(key=lambda pair: (-pair[0], pair[1]))
        return [
            Candidate(chunk_id=cid, scores={"maxsim": score}, retrievers={"maxsim"})
            for score, cid in hits[:k]
        ]
