"""Engine configuration with TOML loading."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import tomli


@dataclass
class RetrievalConfig:
    k: int = 25
    dense_threshold: float = 0.7
    maxsim_threshold: float = 0.5
    bm25_k1: float = 1.2
    bm25_b: float = 0.75


@dataclass
class ChunkingConfig:
    size: int = 512
    overlap: int = 64


@dataclass
class GateConfig:
    rerank_threshold: float = 0.7


@dataclass
class PipelineConfig:
    max_refinements: int = 2
    context_budget_words: int = 6000


@dataclass
class ProviderConfig:
    mode: str = "stub"  # "stub" or "remote"
    dimension: int = 64
    script_path: str | None = None
    embed_url: str | None = None
    rerank_url: str | None = None
    llm_url: str | None = None
    timeout: float = 10.0
    retries: int = 3


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8020
    data_dir: str = "evidesk_data"
    ui_dir: str | None = None


@dataclass
class EngineConfig:
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    chunking: ChunkingConfig = field(default_factory=ChunkingConfig)
    gate: GateConfig = field(default_factory=GateConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    providers: ProviderConfig = field(default_factory=ProviderConfig)
    service: ServiceConfig = field(default_factory=ServiceConfig)


_SECTIONS = {
    "retrieval": RetrievalConfig,
    "chunking": ChunkingConfig,
    "gate": GateConfig,
    "pipeline": PipelineConfig,
    "providers": ProviderConfig,
    "service": ServiceConfig,
}


def load_config(path: str | Path | None = None) -> EngineConfig:
    """Build an EngineConfig from a TOML file, falling back to defaults.

    Unknown sections or keys raise ValueError rather than being ignored, so
    a typo in a config file fails loudly.
    """
    cfg = EngineConfig()
    if path is None:
        return cfg
    with open(path, "rb") as fh:
        raw = tomli.load(fh)
    for section, values in raw.items():
        if section not in _SECTIONS:
            raise ValueError(f"unknown config section: {section}")
        target = getattr(cfg, section)
        if not isinstance(values, dict):
            raise ValueError(f"config section {section} must be a table")
        for key, value in values.items():
            if not hasattr(target, key):
                raise ValueError(f"unknown config key: {section}.{key}")
            setattr(target, key, value)
    return cfg
