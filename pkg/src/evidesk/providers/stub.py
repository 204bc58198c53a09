"""Deterministic offline providers.

Every stub is a pure function of its inputs: token hashing uses blake2b
(the builtin hash() is salted per process and would break replay), and the
language model only ever replays scripted responses keyed by prompt digest.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from evidesk.errors import EmptyInput, ParseFailure
from evidesk.providers.base import (
    MULTI_VECTOR,
    SINGLE_VECTOR,
    EmbeddingProvider,
    LlmProvider,
    RerankProvider,
    RerankVerdict,
    unit_score,
)
from evidesk.words import index_tokens


def _token_slot(token: str, dimension: int) -> tuple[int, float]:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
    value = int.from_bytes(digest, "big")
    sign = 1.0 if value & 1 == 0 else -1.0
    return (value >> 1) % dimension, sign


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class HashingEmbedder(EmbeddingProvider):
    """Feature-hash embeddings: one signed slot per distinct token."""

    def __init__(self, dimension: int = 64):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension

    def embed(self, text: str, mode: str) -> np.ndarray:
        tokens = index_tokens(text)
        if not tokens:
            raise EmptyInput("text has no tokens")
        if mode == SINGLE_VECTOR:
            vector = np.zeros(self.dimension, dtype=np.float64)
            for token in tokens:
                slot, sign = _token_slot(token, self.dimension)
                vector[slot] += sign
            norm = np.linalg.norm(vector)
            if norm == 0.0:
                # Signs cancelled exactly; fall back to a deterministic spike.
                slot, sign = _token_slot(tokens[0], self.dimension)
                vector[slot] = sign
                norm = 1.0
            return vector / norm
        if mode == MULTI_VECTOR:
            rows = np.zeros((len(tokens), self.dimension), dtype=np.float64)
            for i, token in enumerate(tokens):
                slot, sign = _token_slot(token, self.dimension)
                rows[i, slot] = sign
            return rows
        raise ValueError(f"unknown embedding mode: {mode}")


class OverlapReranker(RerankProvider):
    """Raw score is an affine function of query-token coverage.

    coverage = |query tokens also in passage| / |distinct query tokens|.
    raw = 60 * coverage - 20, so full coverage gives logistic(40), which is
    exactly 1.0 in double precision, and zero coverage saturates near 0.
    """

    SLOPE = 60.0
    OFFSET = -20.0

    def rerank(self, query: str, passage: str) -> RerankVerdict:
        q = set(index_tokens(query))
        if not q:
            raise EmptyInput("query has no tokens")
        p = set(index_tokens(passage))
        if not p:
            raise EmptyInput("passage has no tokens")
        coverage = len(q & p) / len(q)
        raw = self.SLOPE * coverage + self.OFFSET
        return RerankVerdict(raw_score=raw, unit_score=unit_score(raw))


class ScriptedLlm(LlmProvider):
    """Replay-only language model: responses come from a recorded script.

    A prompt with no recorded response is a contract violation of the
    replay, surfaced as ParseFailure so callers exercise their fallbacks.
    """

    def __init__(self, scripts: dict[tuple[str, str], str] | None = None):
        self.scripts = dict(scripts or {})

    def complete(self, role: str, prompt: str) -> str:
        key = (role, prompt_digest(prompt))
        if key not in self.scripts:
            raise ParseFailure(f"no scripted response for role={role}")
        return self.scripts[key]

    @classmethod
    def from_jsonl(cls, path: str | Path) -> "ScriptedLlm":
        scripts: dict[tuple[str, str], str] = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                row = json.loads(line)
                scripts[(row["role"], row["prompt_digest"])] = row["response"]
        return cls(scripts)

    def to_jsonl(self, path: str | Path):
        with open(path, "w", encoding="utf-8") as fh:
            for (role, digest), response in sorted(self.scripts.items()):
                fh.write(
                    json.dumps(
                        {"role": role, "prompt_digest": digest, "response": response},
                        ensure_ascii=True,
                    )
                    + "\n"
                )
