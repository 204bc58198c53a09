"""Index persistence: checksummed binary snapshots plus a JSON manifest."""

from __future__ import annotations

import hashlib
import json
import pickle
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from evidesk.corpus.store import ChunkStore
from evidesk.config import RetrievalConfig
from evidesk.errors import IndexCorruption, NotFound
from evidesk.providers.base import EmbeddingProvider
from evidesk.retrieval.dense import DenseIndex
from evidesk.retrieval.lexical import LexicalIndex
from evidesk.retrieval.multivector import MultiVectorIndex

MAGIC = b"EVIX"
FORMAT_VERSION = 1

LEXICAL_FILE = "lexical.idx"
DENSE_FILE = "dense.idx"
MULTIVECTOR_FILE = "multivector.idx"
MANIFEST_FILE = "index_manifest.json"


def _write_snapshot(path: Path, payload: object):
    blob = pickle.dumps(payload, protocol=4)
    digest = hashlib.sha256(blob).digest()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(FORMAT_VERSION.to_bytes(2, "big"))
        fh.write(digest)
        fh.write(blob)


def _read_snapshot(path: Path) -> object:
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise NotFound(str(path)) from None
    if len(raw) < 38 or raw[:4] != MAGIC:
        raise IndexCorruption(f"{path}: bad header")
    version = int.from_bytes(raw[4:6], "big")
    if version != FORMAT_VERSION:
        raise IndexCorruption(f"{path}: unsupported format version {version}")
    digest, blob = raw[6:38], raw[38:]
    if hashlib.sha256(blob).digest() != digest:
        raise IndexCorruption(f"{path}: checksum mismatch")
    try:
        return pickle.loads(blob)
    except Exception as exc:
        raise IndexCorruption(f"{path}: {exc}") from exc


@dataclass
class IndexBundle:
    lexical: LexicalIndex
    dense: DenseIndex
    multivector: MultiVectorIndex
    chunk_count: int
    dimension: int


def build_indexes(
    store: ChunkStore,
    embedder: EmbeddingProvider,
    retrieval: RetrievalConfig | None = None,
) -> IndexBundle:
    """Index every chunk's banner-plus-text under all three retrievers."""
    retrieval = retrieval or RetrievalConfig()
    texts = [(c.chunk_id, c.indexed_text()) for c in store.iter_chunks()]
    lexical = LexicalIndex(k1=retrieval.bm25_k1, b=retrieval.bm25_b).build(texts)
    dense = DenseIndex(embedder.dimension).build(
        [(cid, embedder.embed_single(text)) for cid, text in texts]
    )
    multivector = MultiVectorIndex(embedder.dimension).build(
        [(cid, embedder.embed_multi(text)) for cid, text in texts]
    )
    return IndexBundle(
        lexical=lexical,
        dense=dense,
        multivector=multivector,
        chunk_count=len(texts),
        dimension=embedder.dimension,
    )


def save_bundle(bundle: IndexBundle, out_dir: str | Path):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lex = bundle.lexical
    _write_snapshot(
        out_dir / LEXICAL_FILE,
        {
            "k1": lex.k1,
            "b": lex.b,
            "chunk_ids": lex.chunk_ids,
            "doc_lengths": lex.doc_lengths,
            "postings": lex.postings,
        },
    )
    _write_snapshot(
        out_dir / DENSE_FILE,
        {"chunk_ids": bundle.dense.chunk_ids, "matrix": bundle.dense.matrix},
    )
    _write_snapshot(
        out_dir / MULTIVECTOR_FILE,
        {
            "chunk_ids": bundle.multivector.chunk_ids,
            "tokens": bundle.multivector.tokens,
            "offsets": bundle.multivector.offsets,
        },
    )
    manifest = {
        "format_version": FORMAT_VERSION,
        "chunk_count": bundle.chunk_count,
        "dimension": bundle.dimension,
        "bm25": {"k1": lex.k1, "b": lex.b},
    }
    with open(out_dir / MANIFEST_FILE, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_bundle(in_dir: str | Path) -> IndexBundle:
    in_dir = Path(in_dir)
    manifest_path = in_dir / MANIFEST_FILE
    if not manifest_path.exists():
        raise NotFound(str(manifest_path))
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)

    lex_raw = _read_snapshot(in_dir / LEXICAL_FILE)
    lexical = LexicalIndex(k1=lex_raw["k1"], b=lex_raw["b"])
    lexical.chunk_ids = lex_raw["chunk_ids"]
    lexical.doc_lengths = lex_raw["doc_lengths"]
    lexical.postings = lex_raw["postings"]
    n = len(lexical.chunk_ids)
    lexical.avg_length = (sum(lexical.doc_lengths) / n) if n else 0.0
    lengths = np.array(lexical.doc_lengths, dtype=np.float64)
    if n and lexical.avg_length > 0:
        lexical._length_norm = lexical.k1 * (
            1.0 - lexical.b + lexical.b * lengths / lexical.avg_length
        )
    else:
        lexical._length_norm = np.full(n, lexical.k1, dtype=np.float64)

    dense_raw = _read_snapshot(in_dir / DENSE_FILE)
    dimension = int(manifest["dimension"])
    dense = DenseIndex(dimension)
    dense.chunk_ids = dense_raw["chunk_ids"]
    dense.matrix = dense_raw["matrix"]

    mv_raw = _read_snapshot(in_dir / MULTIVECTOR_FILE)
    multivector = MultiVectorIndex(dimension)
    multivector.chunk_ids = mv_raw["chunk_ids"]
    multivector.tokens = mv_raw["tokens"]
    multivector.offsets = mv_raw["offsets"]

    same_ids = lexical.chunk_ids == dense.chunk_ids == multivector.chunk_ids
    if not same_ids or len(lexical.chunk_ids) != int(manifest["chunk_count"]):
        raise IndexCorruption(f"{in_dir}: indexes disagree on chunk identity")
    if dense.matrix.shape[0] != len(dense.chunk_ids) or (
        dense.matrix.size and dense.matrix.shape[1] != dimension
    ):
        raise IndexCorruption(f"{in_dir}: dense matrix shape mismatch")
    if len(multivector.offsets) != len(multivector.chunk_ids) + 1:
        raise IndexCorruption(f"{in_dir}: offset table length mismatch")
    return IndexBundle(
        lexical=lexical,
        dense=dense,
        multivector=multivector,
        chunk_count=len(lexical.chunk_ids),
        dimension=dimension,
    )
