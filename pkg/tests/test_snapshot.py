"""Index snapshot round-trips and corruption detection."""

import pytest

from evidesk.corpus.chunking import Chunk
from evidesk.corpus.store import ChunkStore
from evidesk.errors import IndexCorruption, NotFound
from evidesk.providers.stub import HashingEmbedder
from evidesk.retrieval.snapshot import (
    DENSE_FILE,
    LEXICAL_FILE,
    build_indexes,
    load_bundle,
    save_bundle,
)


def tiny_store():
    texts = {
        "a": "oral dose escalation in the first cohort",
        "b": "hepatic adverse event at the highest dose",
        "c": "rat toxicity study with daily dosing",
    }
    chunks = [
        Chunk(
            doc_id=f"doc-{cid}",
            section_path=("S",),
            start_word=0,
            end_word=len(text.split()),
            text=text,
        )
        for cid, text in sorted(texts.items())
    ]
    return ChunkStore([], chunks)


@pytest.fixture
def bundle():
    return build_indexes(tiny_store(), HashingEmbedder(dimension=32))


class TestSnapshotRoundTrip:
    def test_reloaded_indexes_return_identical_results(self, tmp_path, bundle):
        save_bundle(bundle, tmp_path)
        loaded = load_bundle(tmp_path)
        embedder = HashingEmbedder(dimension=32)
        query = "highest oral dose"
        before = bundle.lexical.search(query, k=10)
        after = loaded.lexical.search(query, k=10)
        assert [(c.chunk_id, c.scores) for c in before] == [
            (c.chunk_id, c.scores) for c in after
        ]
        qv = embedder.embed_single(query)
        assert [(c.chunk_id, c.scores) for c in bundle.dense.search(qv, -1.0, 10)] == [
            (c.chunk_id, c.scores) for c in loaded.dense.search(qv, -1.0, 10)
        ]
        qm = embedder.embed_multi(query)
        assert [(c.chunk_id, c.scores) for c in bundle.multivector.search(qm, -1.0, 10)] == [
            (c.chunk_id, c.scores) for c in loaded.multivector.search(qm, -1.0, 10)
        ]

    def test_manifest_records_shape(self, tmp_path, bundle):
        save_bundle(bundle, tmp_path)
        loaded = load_bundle(tmp_path)
        assert loaded.chunk_count == 3
        assert loaded.dimension == 32


class TestSnapshotIntegrity:
    def test_truncated_file_detected(self, tmp_path, bundle):
        save_bundle(bundle, tmp_path)
        path = tmp_path / DENSE_FILE
        path.write_bytes(path.read_bytes()[:-7])
        with pytest.raises(IndexCorruption):
            load_bundle(tmp_path)

    def test_flipped_byte_detected(self, tmp_path, bundle):
        save_bundle(bundle, tmp_path)
        path = tmp_path / LEXICAL_FILE
        raw = bytearray(path.read_bytes())
        raw[50] ^= 0xFF
        path.write_bytes(bytes(raw))
        with pytest.raises(IndexCorruption):
            load_bundle(tmp_path)

    def test_missing_directory_is_not_found(self, tmp_path):
        with pytest.raises(NotFound):
            load_bundle(tmp_path / "nowhere")
