"""Corpus ingestion: records, section trees, chunking, molecule linking."""

from evidesk.corpus.records import DocumentRecord, MoleculeEntry, MoleculeRegistry
from evidesk.corpus.sections import SectionNode, SectionTree, parse_sections
from evidesk.corpus.chunking import Chunk, chunk_document, chunk_sections, render_metadata_header
from evidesk.corpus.linking import link_molecules
from evidesk.corpus.store import ChunkStore, IngestReport, ingest_corpus

__all__ = [
    "DocumentRecord",
    "MoleculeEntry",
    "MoleculeRegistry",
    "SectionNode",
    "SectionTree",
    "parse_sections",
    "Chunk",
    "chunk_document",
    "chunk_sections",
    "render_metadata_header",
    "link_molecules",
    "ChunkStore",
    "IngestReport",
    "ingest_corpus",
]
