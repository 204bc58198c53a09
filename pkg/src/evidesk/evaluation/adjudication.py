"""Expert adjudication records and their append-only store.

The store is an audit trail: records are only ever appended, and uniqueness
is enforced on write per (benchmark_query, molecule_id, adjudicator) so two
reviewers may score the same molecule. The tally is stricter: it refuses to
mix verdicts from different reviewers for one molecule, because the counts
feeding the metrics must contain each molecule exactly once.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from evidesk.errors import DuplicateRecord, InvalidAdjudication
from evidesk.evaluation.metrics import ConfusionCounts

LABELS = ("TP", "TN", "FP", "FN")
ERROR_LABELS = ("FP", "FN")
BENCHMARK_QUERIES = tuple(f"Q{i}" for i in range(1, 8))


@dataclass
class AdjudicationRecord:
    query_id: str  # run this verdict refers to
    benchmark_query: str
    molecule_id: str
    label: str
    adjudicator: str
    error_type: str | None = None
    timestamp: float = field(default_factory=time.time)

    def __post_init__(self):
        if self.label not in LABELS:
            raise InvalidAdjudication(f"label must be one of {LABELS}, got {self.label!r}")
        if self.benchmark_query not in BENCHMARK_QUERIES:
            raise InvalidAdjudication(
                f"benchmark_query must be one of {BENCHMARK_QUERIES}, got {self.benchmark_query!r}"
            )
        if not self.molecule_id:
            raise InvalidAdjudication("molecule_id is required")
        if not self.adjudicator:
            raise InvalidAdjudication("adjudicator is required")
        if self.error_type is not None and self.label not in ERROR_LABELS:
            raise InvalidAdjudication(
                f"error_type only applies to {ERROR_LABELS}, not {self.label}"
            )

    def write_key(self) -> tuple[str, str, str]:
        return (self.benchmark_query, self.molecule_id, self.adjudicator)

    def to_dict(self) -> dict:
        return {
            "query_id": self.query_id,
            "benchmark_query": self.benchmark_query,
            "molecule_id": self.molecule_id,
            "label": self.label,
            "adjudicator": self.adjudicator,
            "error_type": self.error_type,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AdjudicationRecord":
        return cls(
            query_id=raw["query_id"],
            benchmark_query=raw["benchmark_query"],
            molecule_id=raw["molecule_id"],
            label=raw["label"],
            adjudicator=raw["adjudicator"],
            error_type=raw.get("error_type"),
            timestamp=raw.get("timestamp", 0.0),
        )


class AdjudicationStore:
    """Append-only JSONL store; existing rows load at construction."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._records: list[AdjudicationRecord] = []
        self._keys: set[tuple[str, str, str]] = set()
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._load(AdjudicationRecord.from_dict(json.loads(line)))

    def _load(self, record: AdjudicationRecord):
        key = record.write_key()
        if key in self._keys:
            raise DuplicateRecord(f"adjudication already stored for {key}")
        self._keys.add(key)
        self._records.append(record)

    def add(self, record: AdjudicationRecord) -> AdjudicationRecord:
        self._load(record)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_dict(), ensure_ascii=True) + "\n")
        return record

    def records(self, benchmark_query: str | None = None) -> list[AdjudicationRecord]:
        if benchmark_query is None:
            return list(self._records)
        return [r for r in self._records if r.benchmark_query == benchmark_query]

    def __len__(self) -> int:
        return len(self._records)


def tally(records: list[AdjudicationRecord], benchmark_query: str) -> ConfusionCounts:
    """Count labels for one benchmark query, one verdict per molecule."""
    seen: set[str] = set()
    counts = {"TP": 0, "TN": 0, "FP": 0, "FN": 0}
    for record in records:
        if record.benchmark_query != benchmark_query:
            continue
        if record.molecule_id in seen:
            raise DuplicateRecord(
                f"{benchmark_query} has multiple verdicts for {record.molecule_id}"
            )
        seen.add(record.molecule_id)
        counts[record.label] += 1
    return ConfusionCounts(tp=counts["TP"], tn=counts["TN"], fp=counts["FP"], fn=counts["FN"])
