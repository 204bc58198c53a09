from evidesk.fixtures.corpus import (
    GOLDEN_QUERIES,
    GoldenQuery,
    build_fixture_env,
    fixture_documents,
    fixture_registry,
    write_fixture_inputs,
)
from evidesk.fixtures.recording import RecordingLlm

__all__ = [
    "GOLDEN_QUERIES",
    "GoldenQuery",
    "RecordingLlm",
    "build_fixture_env",
    "fixture_documents",
    "fixture_registry",
    "write_fixture_inputs",
]
