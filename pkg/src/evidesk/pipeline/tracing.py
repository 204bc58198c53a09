"""Run traces: ordered JSONL events and machine checks over them.

The trace is the audit surface: stage grammar, gate soundness, and
provenance closure are all decidable from the event stream alone, without
consulting pipeline internals.
"""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

STAGE_CLASSIFY = "classify"
STAGE_DECOMPOSE = "decompose"
STAGE_RETRIEVE = "retrieve"
STAGE_GATE = "gate"
STAGE_REFINE = "refine"
STAGE_RESEARCH = "research"
STAGE_SUPERVISE = "supervise"
STAGE_TAXONOMY = "taxonomy"
STAGE_LLM = "llm_call"

_BRANCH_SYMBOLS = {
    STAGE_RETRIEVE: "r",
    STAGE_GATE: "g",
    STAGE_REFINE: "f",
    STAGE_RESEARCH: "s",
}
_BRANCH_PATTERN = re.compile(r"^rg(frg)*s$")


@dataclass
class TraceEvent:
    run_id: str
    seq: int
    stage: str
    payload: dict
    ts: float

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "seq": self.seq,
            "stage": self.stage,
            "payload": self.payload,
            "ts": self.ts,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TraceEvent":
        return cls(
            run_id=raw["run_id"],
            seq=raw["seq"],
            stage=raw["stage"],
            payload=raw["payload"],
            ts=raw["ts"],
        )


class TraceWriter:
    """Collects events in order, optionally mirroring them to a JSONL file."""

    def __init__(self, run_id: str, path: str | Path | None = None):
        self.run_id = run_id
        self.events: list[TraceEvent] = []
        self._lock = threading.Lock()
        self._llm_counter = 0
        self._fh = open(path, "w", encoding="utf-8") if path else None

    def emit(self, stage: str, payload: dict) -> TraceEvent:
        with self._lock:
            event = TraceEvent(
                run_id=self.run_id,
                seq=len(self.events),
                stage=stage,
                payload=payload,
                ts=time.time(),
            )
            self.events.append(event)
            if self._fh:
                self._fh.write(json.dumps(event.to_dict(), ensure_ascii=True) + "\n")
                self._fh.flush()
            return event

    def next_llm_trace_id(self) -> str:
        with self._lock:
            self._llm_counter += 1
            return f"{self.run_id}:llm:{self._llm_counter}"

    def close(self):
        if self._fh:
            self._fh.close()
            self._fh = None


def read_trace(path: str | Path) -> list[TraceEvent]:
    events = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                events.append(TraceEvent.from_dict(json.loads(line)))
    return events


@dataclass
class TraceProblems:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, message: str):
        self.problems.append(message)


def check_trace_grammar(events: list[TraceEvent]) -> TraceProblems:
    """Validate stage structure: one planning pass, well-formed branches,
    one composition pass, in that order."""
    report = TraceProblems()
    stages = [e.stage for e in events]
    for stage in (STAGE_CLASSIFY, STAGE_DECOMPOSE, STAGE_SUPERVISE, STAGE_TAXONOMY):
        if stages.count(stage) != 1:
            report.add(f"expected exactly one {stage} event, saw {stages.count(stage)}")
    if report.problems:
        return report

    order = {stage: i for i, stage in enumerate(stages) if stage in (
        STAGE_CLASSIFY, STAGE_DECOMPOSE, STAGE_SUPERVISE, STAGE_TAXONOMY
    )}
    if not (
        order[STAGE_CLASSIFY] < order[STAGE_DECOMPOSE] < order[STAGE_SUPERVISE] < order[STAGE_TAXONOMY]
    ):
        report.add("planning and composition stages out of order")

    branch_events: dict[str, list[TraceEvent]] = {}
    for event in events:
        if event.stage in _BRANCH_SYMBOLS:
            sub_id = event.payload.get("sub_id")
            if not sub_id:
                report.add(f"seq {event.seq}: {event.stage} event without sub_id")
                continue
            branch_events.setdefault(sub_id, []).append(event)
        if event.stage in _BRANCH_SYMBOLS and not (
            order[STAGE_DECOMPOSE] < event.seq < order[STAGE_SUPERVISE]
        ):
            report.add(f"seq {event.seq}: branch event outside the branch window")

    declared = set()
    for event in events:
        if event.stage == STAGE_DECOMPOSE:
            declared = {s["sub_id"] for s in event.payload.get("sub_queries", [])}
    if declared != set(branch_events):
        report.add(
            f"declared sub-queries {sorted(declared)} != traced branches {sorted(branch_events)}"
        )

    for sub_id, group in sorted(branch_events.items()):
        symbols = "".join(_BRANCH_SYMBOLS[e.stage] for e in group)
        if not _BRANCH_PATTERN.match(symbols):
            report.add(f"{sub_id}: branch stage sequence {symbols!r} is malformed")
        attempts = [e.payload.get("attempt") for e in group if e.stage == STAGE_RETRIEVE]
        if attempts != list(range(1, len(attempts) + 1)):
            report.add(f"{sub_id}: retrieval attempts {attempts} not consecutive from 1")
    return report


def gate_soundness(events: list[TraceEvent], threshold: float = 0.7) -> TraceProblems:
    """Every retained candidate in every gate event must show both a
    passing score and a RELEVANT judgment; every rejected one must not."""
    report = TraceProblems()
    for event in events:
        if event.stage != STAGE_GATE:
            continue
        for cand in event.payload.get("candidates", []):
            retained = cand.get("retained")
            rerank = cand.get("scores", {}).get("rerank")
            judgment = cand.get("judgment")
            should = rerank is not None and rerank >= threshold and judgment == "RELEVANT"
            if bool(retained) != should:
                report.add(
                    f"seq {event.seq}: {cand.get('chunk_id')} retained={retained} "
                    f"rerank={rerank} judgment={judgment}"
                )
    return report


@dataclass
class ProvenanceReport:
    retrieved: set[str]
    retained: set[str]
    cited: set[str]
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


def provenance_report(events: list[TraceEvent], resolve_chunk=None) -> ProvenanceReport:
    """Check citation closure from the trace alone.

    Cited ids must come from the retained set of their own branch's final
    gate, retained ids must have been retrieved, and every cited id must
    resolve in the chunk store when a resolver is supplied.
    """
    problems: list[str] = []
    retrieved: set[str] = set()
    retained_by_sub: dict[str, list[set[str]]] = {}
    retrieved_by_sub: dict[str, set[str]] = {}

    for event in events:
        if event.stage == STAGE_RETRIEVE:
            ids = {c["chunk_id"] for c in event.payload.get("candidates", [])}
            retrieved |= ids
            retrieved_by_sub.setdefault(event.payload["sub_id"], set()).update(ids)
        elif event.stage == STAGE_GATE:
            kept = set(event.payload.get("retained_ids", []))
            retained_by_sub.setdefault(event.payload["sub_id"], []).append(kept)
            extra = kept - retrieved_by_sub.get(event.payload["sub_id"], set())
            if extra:
                problems.append(f"{event.payload['sub_id']}: retained unretrieved {sorted(extra)}")

    retained_all = {cid for groups in retained_by_sub.values() for g in groups for cid in g}

    cited: set[str] = set()

    def check_citation(chunk_id: str, where: str, sub_id: str | None):
        cited.add(chunk_id)
        if sub_id is not None:
            final_gate = retained_by_sub.get(sub_id, [set()])[-1]
            if chunk_id not in final_gate:
                problems.append(f"{where}: {chunk_id} not in final retained set of {sub_id}")
        elif chunk_id not in retained_all:
            problems.append(f"{where}: {chunk_id} never retained")
        if resolve_chunk is not None:
            try:
                resolve_chunk(chunk_id)
            except Exception:
                problems.append(f"{where}: {chunk_id} does not resolve in the store")

    for event in events:
        if event.stage == STAGE_RESEARCH and not event.payload.get("is_null"):
            for item in event.payload.get("evidence", []):
                check_citation(item["chunk_id"], f"research {event.seq}", event.payload["sub_id"])
        elif event.stage == STAGE_SUPERVISE:
            answer = event.payload.get("answer", {})
            for section in answer.get("sections", []):
                for finding in section.get("findings", []):
                    for item in finding.get("evidence", []):
                        check_citation(
                            item["chunk_id"], f"answer section {section.get('domain')}",
                            finding.get("sub_id"),
                        )
        elif event.stage == STAGE_TAXONOMY:
            structured = event.payload.get("structured", {})
            for field_id, populated in structured.get("fields", {}).items():
                for chunk_id in populated.get("chunk_ids", []):
                    check_citation(chunk_id, f"field {field_id}", None)

    return ProvenanceReport(
        retrieved=retrieved, retained=retained_all, cited=cited, problems=problems
    )
