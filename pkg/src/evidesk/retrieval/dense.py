"""Single-vector cosine retrieval."""

from __future__ import annotations

import numpy as np

from evidesk.errors import DimensionMismatch
from evidesk.retrieval.candidates import Candidate

UNIT_TOLERANCE = 1e-6


def _check_unit_rows(matrix: np.ndarray, what: str):
    norms = np.linalg.norm(matrix, axis=-1)
    if np.any(np.abs(norms - 1.0) > UNIT_TOLERANCE):
        raise ValueError(f"{what} must be unit-normalized")


class DenseIndex:
    """Chunk embeddings stacked row-wise; cosine reduces to a dot product."""

    def __init__(self, dimension: int):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.chunk_ids: list[str] = []
        self.matrix = np.zeros((0, dimension), dtype=np.float64)

    def build(self, items: list[tuple[str, np.ndarray]]) -> "DenseIndex":
        vectors = []
        for chunk_id, vector in items:
            vector = np.asarray(vector, dtype=np.float64)
            if vector.shape != (self.dimension,):
                raise DimensionMismatch(f"{chunk_id}: {vector.shape}")
            vectors.append(vector)
            self.chunk_ids.append(chunk_id)
        if vectors:
            self.matrix = np.vstack(vectors)
            _check_unit_rows(self.matrix, "chunk embeddings")
        return self

    def search(self, query_vector: np.ndarray, threshold: float, k: int) -> list[Candidate]:
        query_vector = np.asarray(query_vector, dtype=np.float64)
        if query_vector.shape != (self.dimension,):
            raise DimensionMismatch(str(query_vector.shape))
        _check_unit_rows(query_vector[None, :], "query embedding")
        if not self.chunk_ids:
            return []
        sims = self.matrix @ query_vector
        hits = [
            (float(sims[i]), self.chunk_ids[i])
            for i in np.flatnonzero(sims >= threshold)
        ]
        hits.sort(key=lambda pair: (-pair[0], pair[1]))
        return [
            Candidate(chunk_id=cid, scores={"dense": score}, retrievers={"dense"})
            for score, cid in hits[:k]
        ]
