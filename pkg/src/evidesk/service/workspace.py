"""Workspace layout and engine assembly.

A workspace is one directory holding everything a deployment needs: the
ingested corpus store, index snapshots, run database, trace files, and the
adjudication log. All CLI verbs and the HTTP app operate on a workspace.
"""

from __future__ import annotations

from pathlib import Path

from evidesk.config import EngineConfig, load_config
from evidesk.corpus.records import MoleculeRegistry
from evidesk.corpus.store import ChunkStore, IngestReport, ingest_corpus
from evidesk.errors import NotFound
from evidesk.pipeline.runner import PipelineRunner
from evidesk.providers.base import ProviderSuite
from evidesk.providers.remote import remote_suite
from evidesk.providers.stub import HashingEmbedder, OverlapReranker, ScriptedLlm
from evidesk.retrieval.snapshot import (
    MANIFEST_FILE,
    build_indexes,
    load_bundle,
    save_bundle,
)
from evidesk.taxonomy.library import default_library


class Workspace:
    def __init__(self, root: str | Path, config_path: str | Path | None = None):
        self.root = Path(root)
        if config_path is not None:
            self.config: EngineConfig = load_config(config_path)
        else:
            default = self.root / "config.toml"
            self.config = load_config(default if default.exists() else None)

    @property
    def store_dir(self) -> Path:
        return self.root / "store"

    @property
    def index_dir(self) -> Path:
        return self.root / "indexes"

    @property
    def molecules_path(self) -> Path:
        return self.root / "molecules.json"

    @property
    def runs_db_path(self) -> Path:
        return self.root / "runs.sqlite3"

    @property
    def traces_dir(self) -> Path:
        return self.root / "traces"

    @property
    def adjudications_path(self) -> Path:
        return self.root / "adjudications.jsonl"

    def is_ingested(self) -> bool:
        return (self.store_dir / "store_manifest.json").exists()

    def is_indexed(self) -> bool:
        return (self.index_dir / MANIFEST_FILE).exists()

    def registry(self) -> MoleculeRegistry:
        if not self.molecules_path.exists():
            raise NotFound(f"no molecule registry at {self.molecules_path}; ingest first")
        return MoleculeRegistry.from_json(self.molecules_path)

    def build_suite(self) -> ProviderSuite:
        providers = self.config.providers
        if providers.mode == "remote":
            return remote_suite(providers)
        if providers.mode != "stub":
            raise ValueError(f"unknown provider mode: {providers.mode}")
        if providers.script_path:
            script = Path(providers.script_path)
            if not script.is_absolute():
                script = self.root / script
            llm = ScriptedLlm.from_jsonl(script)
        else:
            llm = ScriptedLlm()
        return ProviderSuite(
            embedder=HashingEmbedder(dimension=providers.dimension),
            reranker=OverlapReranker(),
            llm=llm,
        )

    def ingest(self, corpus_path: str | Path, molecules_path: str | Path) -> IngestReport:
        self.root.mkdir(parents=True, exist_ok=True)
        registry = MoleculeRegistry.from_json(molecules_path)
        # keep the registry inside the workspace so later verbs are self-contained
        registry.to_json(self.molecules_path)
        return ingest_corpus(corpus_path, registry, self.store_dir, self.config.chunking)

    def build_index(self) -> int:
        store = ChunkStore.load(self.store_dir)
        suite = self.build_suite()
        bundle = build_indexes(store, suite.embedder, self.config.retrieval)
        save_bundle(bundle, self.index_dir)
        return bundle.chunk_count

    def load_runner(self) -> PipelineRunner:
        store = ChunkStore.load(self.store_dir)
        bundle = load_bundle(self.index_dir)
        return PipelineRunner(
            store=store,
            indexes=bundle,
            providers=self.build_suite(),
            library=default_library(),
            registry=self.registry(),
            config=self.config,
        )
