"""Hybrid retrieval: lexical, dense, and late-interaction indexes."""

from evidesk.retrieval.candidates import Candidate, fuse_dedup
from evidesk.retrieval.lexical import LexicalIndex
from evidesk.retrieval.dense import DenseIndex
from evidesk.retrieval.multivector import MultiVectorIndex
from evidesk.retrieval.snapshot import IndexBundle, build_indexes, load_bundle

__all__ = [
    "Candidate",
    "fuse_dedup",
    "LexicalIndex",
    "DenseIndex",
    "MultiVectorIndex",
    "IndexBundle",
    "build_indexes",
    "load_bundle",
]
