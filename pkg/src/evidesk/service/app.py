"""HTTP API over a workspace: runs, traces, adjudications, metrics."""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from evidesk.errors import (
    DuplicateRecord,
    IndexCorruption,
    InvalidAdjudication,
    NotFound,
)
from evidesk.evaluation.adjudication import (
    BENCHMARK_QUERIES,
    AdjudicationRecord,
    AdjudicationStore,
    tally,
)
from evidesk.evaluation.metrics import METRIC_NAMES, compute_metrics
from evidesk.evaluation.rubrics import load_rubrics
from evidesk.pipeline.runner import PipelineRunner
from evidesk.pipeline.tracing import TraceWriter
from evidesk.service.storage import STATUS_COMPLETE, RunStore
from evidesk.service.workspace import Workspace


class ServiceState:
    """Everything the endpoints share: stores, the engine, the worker pool."""

    def __init__(self, workspace: Workspace, max_workers: int = 4):
        self.workspace = workspace
        workspace.root.mkdir(parents=True, exist_ok=True)
        self.runs = RunStore(workspace.runs_db_path, workspace.traces_dir)
        self.adjudications = AdjudicationStore(workspace.adjudications_path)
        self.executor = ThreadPoolExecutor(max_workers=max_workers)
        self._runner: PipelineRunner | None = None
        self._runner_lock = threading.Lock()

    def runner(self) -> PipelineRunner:
        # engine assembly is deferred so the service can start before indexing
        with self._runner_lock:
            if self._runner is None:
                self._runner = self.workspace.load_runner()
            return self._runner

    def shutdown(self):
        self.executor.shutdown(wait=True)
        self.runs.close()

    def execute_run(self, run_id: str, query: str, molecule_id: str):
        trace = TraceWriter(run_id, path=self.runs.trace_path(run_id))
        try:
            result = self.runner().run(query, molecule_id, run_id, trace)
        except Exception as exc:
            self.runs.fail(run_id, f"{type(exc).__name__}: {exc}")
            return
        finally:
            trace.close()
        self.runs.complete(run_id, result.answer.to_dict(), result.structured.to_dict())


def create_app(workspace: Workspace) -> FastAPI:
    state = ServiceState(workspace)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        state.shutdown()

    app = FastAPI(title="evidence desk", lifespan=lifespan)
    app.state.service = state

    @app.post("/runs", status_code=202)
    def submit_run(body: dict = Body(...)):
        query = (body.get("query") or "").strip()
        molecule_id = (body.get("molecule_id") or "").strip()
        if not query or not molecule_id:
            raise HTTPException(400, "query and molecule_id are required")
        if not workspace.is_indexed():
            raise HTTPException(409, "corpus is not indexed yet")
        run_id = body.get("run_id") or uuid.uuid4().hex
        try:
            record = state.runs.create(run_id, query, molecule_id)
        except DuplicateRecord as exc:
            raise HTTPException(409, str(exc)) from None
        state.executor.submit(state.execute_run, run_id, query, molecule_id)
        return {"run_id": record.run_id, "status": record.status}

    @app.get("/runs")
    def list_runs(limit: int = 100):
        return {"runs": [r.summary() for r in state.runs.list(limit=limit)]}

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        try:
            return state.runs.get(run_id).to_dict()
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from None

    @app.get("/runs/{run_id}/trace")
    def get_trace(run_id: str):
        try:
            state.runs.get(run_id)
            return {"run_id": run_id, "events": state.runs.read_trace(run_id)}
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from None

    @app.get("/chunks/{chunk_id:path}")
    def get_chunk(chunk_id: str):
        try:
            runner = state.runner()
        except (NotFound, IndexCorruption) as exc:
            raise HTTPException(409, f"workspace not ready: {exc}") from None
        try:
            chunk = runner.store.get(chunk_id)
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from None
        return chunk.to_dict()

    @app.post("/adjudications", status_code=201)
    def post_adjudication(body: dict = Body(...)):
        run_id = body.get("run_id") or body.get("query_id") or ""
        try:
            run = state.runs.get(run_id)
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from None
        if run.status != STATUS_COMPLETE:
            raise HTTPException(409, f"run {run_id} is {run.status}, not complete")
        try:
            record = AdjudicationRecord(
                query_id=run_id,
                benchmark_query=body.get("benchmark_query", ""),
                molecule_id=body.get("molecule_id", ""),
                label=body.get("label", ""),
                adjudicator=body.get("adjudicator", ""),
                error_type=body.get("error_type"),
            )
            state.adjudications.add(record)
        except InvalidAdjudication as exc:
            raise HTTPException(400, str(exc)) from None
        except DuplicateRecord as exc:
            raise HTTPException(409, str(exc)) from None
        return record.to_dict()

    @app.get("/metrics/{benchmark_query}")
    def get_metrics(benchmark_query: str):
        if benchmark_query not in BENCHMARK_QUERIES:
            raise HTTPException(404, f"unknown benchmark query {benchmark_query}")
        records = state.adjudications.records(benchmark_query)
        try:
            counts = tally(records, benchmark_query)
        except DuplicateRecord as exc:
            raise HTTPException(409, str(exc)) from None
        payload = {
            "benchmark_query": benchmark_query,
            "counts": counts.to_dict(),
            "total": counts.total,
        }
        if counts.total == 0:
            payload.update({name: None for name in METRIC_NAMES})
        else:
            report = compute_metrics(counts)
            payload.update({name: getattr(report, name) for name in METRIC_NAMES})
        return payload

    @app.get("/rubrics")
    def get_rubrics():
        rubrics = load_rubrics()
        return {"rubrics": [rubrics[q].to_dict() for q in sorted(rubrics)]}

    ui_dir = workspace.config.service.ui_dir
    if ui_dir:
        ui_path = Path(ui_dir)
        if not ui_path.is_absolute():
            ui_path = workspace.root / ui_path
        if ui_path.is_dir():
            # mounted last so API routes keep precedence
            app.mount("/", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app
