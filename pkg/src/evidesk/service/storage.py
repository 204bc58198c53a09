"""Run persistence: a sqlite table for run records, JSONL files for traces.

sqlite keeps the completed answers queryable across restarts without an
external database; traces stay as plain files because they are append-only
streams that tooling reads line by line.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from evidesk.errors import DuplicateRecord, NotFound

STATUS_RUNNING = "running"
STATUS_COMPLETE = "complete"
STATUS_FAILED = "failed"

_SCHEMA = """
CREATE TABLE IF NOT EXISTS runs (
    run_id TEXT PRIMARY KEY,
    query TEXT NOT NULL,
    molecule_id TEXT NOT NULL,
    status TEXT NOT NULL,
    started REAL NOT NULL,
    finished REAL,
    answer TEXT,
    structured TEXT,
    diagnostic TEXT
)
"""


@dataclass
class RunRecord:
    run_id: str
    query: str
    molecule_id: str
    status: str
    started: float
    finished: float | None = None
    answer: dict | None = None
    structured: dict | None = None
    diagnostic: str | None = None

    def summary(self) -> dict:
        return {
            "run_id": self.run_id,
            "query": self.query,
            "molecule_id": self.molecule_id,
            "status": self.status,
            "started": self.started,
            "finished": self.finished,
        }

    def to_dict(self) -> dict:
        return {
            **self.summary(),
            "answer": self.answer,
            "structured": self.structured,
            "diagnostic": self.diagnostic,
        }


class RunStore:
    """Thread-safe store; one connection guarded by a lock is plenty at
    desk scale and keeps sqlite's threading rules out of the picture."""

    def __init__(self, db_path: str | Path, traces_dir: str | Path):
        self.traces_dir = Path(traces_dir)
        self.traces_dir.mkdir(parents=True, exist_ok=True)
        Path(db_path).parent.mkdir(parents=True, exist_ok=True)
        self._conn = sqlite3.connect(str(db_path), check_same_thread=False)
        self._lock = threading.Lock()
        with self._lock:
            self._conn.execute(_SCHEMA)
            self._conn.commit()

    def close(self):
        with self._lock:
            self._conn.close()

    def create(self, run_id: str, query: str, molecule_id: str) -> RunRecord:
        record = RunRecord(
            run_id=run_id,
            query=query,
            molecule_id=molecule_id,
            status=STATUS_RUNNING,
            started=time.time(),
        )
        with self._lock:
            try:
                self._conn.execute(
                    "INSERT INTO runs (run_id, query, molecule_id, status, started) "
                    "VALUES (?, ?, ?, ?, ?)",
                    (run_id, query, molecule_id, record.status, record.started),
                )
            except sqlite3.IntegrityError:
                raise DuplicateRecord(f"run {run_id} already exists") from None
            self._conn.commit()
        return record

    def complete(self, run_id: str, answer: dict, structured: dict):
        self._finish(
            run_id,
            STATUS_COMPLETE,
            answer=json.dumps(answer, ensure_ascii=True),
            structured=json.dumps(structured, ensure_ascii=True),
        )

    def fail(self, run_id: str, diagnostic: str):
        self._finish(run_id, STATUS_FAILED, diagnostic=diagnostic)

    def _finish(self, run_id: str, status: str, answer=None, structured=None, diagnostic=None):
        with self._lock:
            cursor = self._conn.execute(
                "UPDATE runs SET status = ?, finished = ?, answer = ?, structured = ?, "
                "diagnostic = ? WHERE run_id = ?",
                (status, time.time(), answer, structured, diagnostic, run_id),
            )
            self._conn.commit()
        if cursor.rowcount == 0:
            raise NotFound(f"run {run_id}")

    def get(self, run_id: str) -> RunRecord:
        with self._lock:
            row = self._conn.execute(
                "SELECT run_id, query, molecule_id, status, started, finished, "
                "answer, structured, diagnostic FROM runs WHERE run_id = ?",
                (run_id,),
            ).fetchone()
        if row is None:
            raise NotFound(f"run {run_id}")
        return self._to_record(row)

    def list(self, limit: int = 100) -> list[RunRecord]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT run_id, query, molecule_id, status, started, finished, "
                "answer, structured, diagnostic FROM runs "
                "ORDER BY started DESC, run_id LIMIT ?",
                (limit,),
            ).fetchall()
        return [self._to_record(row) for row in rows]

    @staticmethod
    def _to_record(row) -> RunRecord:
        return RunRecord(
            run_id=row[0],
            query=row[1],
            molecule_id=row[2],
            status=row[3],
            started=row[4],
            finished=row[5],
            answer=json.loads(row[6]) if row[6] else None,
            structured=json.loads(row[7]) if row[7] else None,
            diagnostic=row[8],
        )

    def trace_path(self, run_id: str) -> Path:
        return self.traces_dir / f"{run_id}.jsonl"

    def read_trace(self, run_id: str) -> list[dict]:
        path = self.trace_path(run_id)
        if not path.exists():
            raise NotFound(f"no trace for run {run_id}")
        events = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    events.append(json.loads(line))
        events.sort(key=lambda e: e["seq"])
        return events
