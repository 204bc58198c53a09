"""HTTP-backed providers for real model endpoints.

Each client posts JSON and retries transient failures with backoff before
giving up with ProviderUnavailable. Response shape violations raise
ParseFailure rather than being coerced.
"""

from __future__ import annotations

import numpy as np
import httpx

from evidesk.config import ProviderConfig
from evidesk.errors import ParseFailure
from evidesk.providers.base import (
    EmbeddingProvider,
    LlmProvider,
    RerankProvider,
    RerankVerdict,
    retry_call,
    unit_score,
)


class _HttpClientBase:
    def __init__(self, url: str, timeout: float, retries: int, client: httpx.Client | None = None):
        self.url = url
        self.retries = retries
        self.client = client or httpx.Client(timeout=timeout)

    def _post(self, payload: dict) -> dict:
        def attempt():
            response = self.client.post(self.url, json=payload)
            response.raise_for_status()
            return response.json()

        return retry_call(
            attempt,
            attempts=self.retries,
            retry_on=(httpx.HTTPError, ValueError),
        )


class HttpEmbedder(_HttpClientBase, EmbeddingProvider):
    def __init__(self, url, dimension, timeout=10.0, retries=3, client=None):
        super().__init__(url, timeout, retries, client)
        self.dimension = dimension

    def embed(self, text: str, mode: str) -> np.ndarray:
        data = self._post({"text": text, "mode": mode, "dimension": self.dimension})
        try:
            array = np.asarray(data["embedding"], dtype=np.float64)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseFailure(f"bad embedding payload: {exc}") from exc
        if array.shape[-1] != self.dimension:
            raise ParseFailure(f"embedding dimension {array.shape}")
        return array


class HttpReranker(_HttpClientBase, RerankProvider):
    def rerank(self, query: str, passage: str) -> RerankVerdict:
        data = self._post({"query": query, "passage": passage})
        try:
            raw = float(data["raw_score"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseFailure(f"bad rerank payload: {exc}") from exc
        return RerankVerdict(raw_score=raw, unit_score=unit_score(raw))


class HttpLlm(_HttpClientBase, LlmProvider):
    def complete(self, role: str, prompt: str) -> str:
        data = self._post({"role": role, "prompt": prompt})
        try:
            text = data["response"]
        except (KeyError, TypeError) as exc:
            raise ParseFailure(f"bad completion payload: {exc}") from exc
        if not isinstance(text, str):
            raise ParseFailure("completion response must be a string")
        return text


def remote_suite(config: ProviderConfig):
    """Build the three HTTP clients from config; import-cycle-free helper."""
    from evidesk.providers.base import ProviderSuite

    if not (config.embed_url and config.rerank_url and config.llm_url):
        raise ValueError("remote mode requires embed_url, rerank_url, and llm_url")
    return ProviderSuite(
        embedder=HttpEmbedder(
            config.embed_url, config.dimension, config.timeout, config.retries
        ),
        reranker=HttpReranker(config.rerank_url, config.timeout, config.retries),
        llm=HttpLlm(config.llm_url, config.timeout, config.retries),
    )
