"""Provider contracts shared by stubs and HTTP clients."""

from __future__ import annotations

import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from evidesk.errors import ProviderUnavailable

SINGLE_VECTOR = "single_vector"
MULTI_VECTOR = "multi_vector"

ROLE_CLASSIFY = "classify"
ROLE_DECOMPOSE = "decompose"
ROLE_JUDGE = "judge_relevance"
ROLE_RESEARCH = "research"
ROLE_SUPERVISE = "supervise"
ROLE_TAXONOMY = "taxonomy"

# supervise is reserved by the protocol; the current composer is
# deterministic and never consumes it.
LLM_ROLES = (
    ROLE_CLASSIFY,
    ROLE_DECOMPOSE,
    ROLE_JUDGE,
    ROLE_RESEARCH,
    ROLE_SUPERVISE,
    ROLE_TAXONOMY,
)


def unit_score(raw: float) -> float:
    """Map an unbounded reranker raw score onto [0, 1] via the logistic.

    Monotone by construction; large magnitudes saturate cleanly instead of
    overflowing.
    """
    if raw <= -700.0:
        return 0.0
    return 1.0 / (1.0 + math.exp(-raw))


@dataclass
class RerankVerdict:
    raw_score: float
    unit_score: float


class EmbeddingProvider(ABC):
    dimension: int

    @abstractmethod
    def embed(self, text: str, mode: str) -> np.ndarray:
        """Return a unit vector (single_vector) or unit-row matrix."""

    def embed_single(self, text: str) -> np.ndarray:
        return self.embed(text, SINGLE_VECTOR)

    def embed_multi(self, text: str) -> np.ndarray:
        return self.embed(text, MULTI_VECTOR)


class RerankProvider(ABC):
    @abstractmethod
    def rerank(self, query: str, passage: str) -> RerankVerdict:
        """Score passage relevance; unit_score must be unit_score(raw)."""


class LlmProvider(ABC):
    @abstractmethod
    def complete(self, role: str, prompt: str) -> str:
        """Return the model response for a role-tagged prompt."""


@dataclass
class ProviderSuite:
    embedder: EmbeddingProvider
    reranker: RerankProvider
    llm: LlmProvider


def retry_call(fn, attempts: int = 3, base_delay: float = 0.2, retry_on=(Exception,)):
    """Call fn with exponential backoff; exhausted -> ProviderUnavailable."""
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    last: Exception | None = None
    for attempt in range(attempts):
        try:
            return fn()
        except retry_on as exc:
            last = exc
            if attempt + 1 < attempts:
                time.sleep(base_delay * (2**attempt))
    raise ProviderUnavailable(str(last)) from last
