"""Persisted corpus store: documents, chunks, and quarantine."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from evidesk.config import ChunkingConfig
from evidesk.corpus.chunking import Chunk, chunk_document
from evidesk.corpus.linking import link_molecules
from evidesk.corpus.records import DocumentRecord, MoleculeRegistry, read_corpus_jsonl
from evidesk.errors import DuplicateRecord, EmptyDocument, NotFound, UnlinkedDocument

DOCUMENTS_FILE = "documents.jsonl"
CHUNKS_FILE = "chunks.jsonl"
QUARANTINE_FILE = "quarantine.jsonl"
MANIFEST_FILE = "store_manifest.json"


@dataclass
class IngestReport:
    documents: int
    chunks: int
    quarantined: int

    def to_dict(self) -> dict:
        return {
            "documents": self.documents,
            "chunks": self.chunks,
            "quarantined": self.quarantined,
        }


class ChunkStore:
    """In-memory view over the persisted corpus directory."""

    def __init__(self, documents: list[DocumentRecord], chunks: list[Chunk]):
        self.documents = {d.doc_id: d for d in documents}
        self.chunks: dict[str, Chunk] = {}
        for chunk in chunks:
            if chunk.chunk_id in self.chunks:
                raise DuplicateRecord(f"chunk {chunk.chunk_id}")
            self.chunks[chunk.chunk_id] = chunk
        self.chunk_ids = list(self.chunks)

    def __len__(self) -> int:
        return len(self.chunks)

    def get(self, chunk_id: str) -> Chunk:
        try:
            return self.chunks[chunk_id]
        except KeyError:
            raise NotFound(f"chunk {chunk_id}") from None

    def get_document(self, doc_id: str) -> DocumentRecord:
        try:
            return self.documents[doc_id]
        except KeyError:
            raise NotFound(f"document {doc_id}") from None

    def iter_chunks(self):
        return iter(self.chunks.values())

    @classmethod
    def load(cls, store_dir: str | Path) -> "ChunkStore":
        store_dir = Path(store_dir)
        docs_path = store_dir / DOCUMENTS_FILE
        chunks_path = store_dir / CHUNKS_FILE
        if not docs_path.exists() or not chunks_path.exists():
            raise NotFound(f"no corpus store at {store_dir}")
        documents = read_corpus_jsonl(docs_path)
        chunks = []
        with open(chunks_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    chunks.append(Chunk.from_dict(json.loads(line)))
        return cls(documents, chunks)


def ingest_corpus(
    corpus_path: str | Path,
    registry: MoleculeRegistry,
    out_dir: str | Path,
    chunking: ChunkingConfig | None = None,
) -> IngestReport:
    """Link, chunk, and persist a corpus JSONL into a store directory.

    Documents that fail linking or are blank are written to the quarantine
    file with the failure reason instead of aborting the whole ingest.
    Duplicate doc_ids are a hard error: silently keeping one of two bodies
    would corrupt provenance.
    """
    chunking = chunking or ChunkingConfig()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = read_corpus_jsonl(corpus_path)

    seen: set[str] = set()
    kept: list[DocumentRecord] = []
    quarantined: list[dict] = []
    all_chunks: list[Chunk] = []
    for record in records:
        if record.doc_id in seen:
            raise DuplicateRecord(f"doc_id {record.doc_id}")
        seen.add(record.doc_id)
        try:
            record.molecule_ids = sorted(link_molecules(record, registry))
            chunks = chunk_document(record, size=chunking.size, overlap=chunking.overlap)
        except UnlinkedDocument:
            quarantined.append({"doc_id": record.doc_id, "reason": "no molecule matched"})
            continue
        except EmptyDocument:
            quarantined.append({"doc_id": record.doc_id, "reason": "blank body"})
            continue
        kept.append(record)
        all_chunks.extend(chunks)

    with open(out_dir / DOCUMENTS_FILE, "w", encoding="utf-8") as fh:
        for record in kept:
            fh.write(json.dumps(record.to_dict(), ensure_ascii=True) + "\n")
    with open(out_dir / CHUNKS_FILE, "w", encoding="utf-8") as fh:
        for chunk in all_chunks:
            fh.write(json.dumps(chunk.to_dict(), ensure_ascii=True) + "\n")
    with open(out_dir / QUARANTINE_FILE, "w", encoding="utf-8") as fh:
        for row in quarantined:
            fh.write(json.dumps(row, ensure_ascii=True) + "\n")
    report = IngestReport(
        documents=len(kept), chunks=len(all_chunks), quarantined=len(quarantined)
    )
    with open(out_dir / MANIFEST_FILE, "w", encoding="utf-8") as fh:
        json.dump(
            {
                **report.to_dict(),
                "chunk_size": chunking.size,
                "chunk_overlap": chunking.overlap,
            },
            fh,
            indent=2,
        )
        fh.write("\n")
    return report
