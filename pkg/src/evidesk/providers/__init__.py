"""Model provider contracts, deterministic stubs, and HTTP clients."""

from evidesk.providers.base import (
    LLM_ROLES,
    MULTI_VECTOR,
    SINGLE_VECTOR,
    EmbeddingProvider,
    LlmProvider,
    ProviderSuite,
    RerankProvider,
    RerankVerdict,
    retry_call,
    unit_score,
)
from evidesk.providers.stub import HashingEmbedder, OverlapReranker, ScriptedLlm

__all__ = [
    "LLM_ROLES",
    "MULTI_VECTOR",
    "SINGLE_VECTOR",
    "EmbeddingProvider",
    "LlmProvider",
    "ProviderSuite",
    "RerankProvider",
    "RerankVerdict",
    "retry_call",
    "unit_score",
    "HashingEmbedder",
    "OverlapReranker",
    "ScriptedLlm",
]
