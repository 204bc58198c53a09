"""Inverted index with BM25 ranking."""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from evidesk import kernels
from evidesk.errors import EmptyQuery
from evidesk.retrieval.candidates import Candidate
from evidesk.words import index_tokens


class LexicalIndex:
    """BM25 over chunk index-token streams.

    Inverse document frequency uses the ln(1 + (N - df + 0.5)/(df + 0.5))
    form, which stays positive for every df <= N; scores are therefore
    always >= 0 and a higher score always means a better lexical match.
    """

    def __init__(self, k1: float = 1.2, b: float = 0.75):
        self.k1 = k1
        self.b = b
        self.chunk_ids: list[str] = []
        self.doc_lengths: list[int] = []
        self.avg_length: float = 0.0
        # term -> (doc index array, term frequency array), frozen by _finish.
        self.postings: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        self._length_norm: np.ndarray | None = None

    def build(self, items: list[tuple[str, str]]) -> "LexicalIndex":
        """items: (chunk_id, text) pairs; order fixes internal doc indices."""
        raw: dict[str, list[tuple[int, int]]] = {}
        for idx, (chunk_id, text) in enumerate(items):
            tokens = index_tokens(text)
            self.chunk_ids.append(chunk_id)
            self.doc_lengths.append(len(tokens))
            for term, tf in Counter(tokens).items():
                raw.setdefault(term, []).append((idx, tf))
        n = len(self.chunk_ids)
        self.avg_length = (sum(self.doc_lengths) / n) if n else 0.0
        for term, pairs in raw.items():
            idxs = np.array([p[0] for p in pairs], dtype=np.int32)
            tfs = np.array([p[1] for p in pairs], dtype=np.float64)
            self.postings[term] = (idxs, tfs)
        lengths = np.array(self.doc_lengths, dtype=np.float64)
        if n and self.avg_length > 0:
            self._length_norm = self.k1 * (1.0 - self.b + self.b * lengths / self.avg_length)
        else:
            self._length_norm = np.full(n, self.k1, dtype=np.float64)
        return self

    def idf(self, term: str) -> float:
        n = len(self.chunk_ids)
        df = len(self.postings[term][0]) if term in self.postings else 0
        return math.log(1.0 + (n - df + 0.5) / (df + 0.5))

    def search(self, query: str, k: int) -> list[Candidate]:
        tokens = index_tokens(query)
        if not tokens:
            raise EmptyQuery(query)
        scores = np.zeros(len(self.chunk_ids), dtype=np.float64)
        touched = np.zeros(len(self.chunk_ids), dtype=bool)
        for term in sorted(set(tokens)):
            if term not in self.postings:
                continue
            idxs, tfs = self.postings[term]
            kernels.bm25_accumulate(scores, idxs, tfs, self.idf(term), self.k1, self._length_norm)
            touched[idxs] = True
        hits = [
            (float(scores[i]), self.chunk_ids[i]) for i in np.flatnonzero(touched)
        ]
        hits.sort(key=lambda pair: (-pair[0], pair[1]))
        return [
            Candidate(chunk_id=cid, scores={"bm25": score}, retrievers={"bm25"})
            for score, cid in hits[:k]
        ]
