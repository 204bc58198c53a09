"""Operator command line: ingest, index, query, serve, eval report."""

from __future__ import annotations

import argparse
import json
import sys
import uuid
from pathlib import Path

from evidesk.errors import EvideskError
from evidesk.evaluation.adjudication import BENCHMARK_QUERIES, AdjudicationStore, tally
from evidesk.evaluation.metrics import compute_metrics, write_metrics_csv, write_metrics_json
from evidesk.pipeline.synthesis import canonical_json_bytes
from evidesk.pipeline.tracing import TraceWriter
from evidesk.service.storage import RunStore
from evidesk.service.workspace import Workspace

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_INTERNAL_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evidesk",
        description="Evidence synthesis over research archives: ingest, index, query, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="link, chunk, and store a corpus")
    ingest.add_argument("--corpus", required=True, help="JSONL of document records")
    ingest.add_argument("--molecules", required=True, help="JSON molecule registry")
    ingest.add_argument("--workspace", required=True)
    ingest.add_argument("--config")

    index = sub.add_parser("index", help="build retrieval indexes from the store")
    index.add_argument("--workspace", required=True)
    index.add_argument("--config")

    query = sub.add_parser("query", help="run one query offline and print the result")
    query.add_argument("--workspace", required=True)
    query.add_argument("--query", required=True)
    query.add_argument("--molecule", required=True)
    query.add_argument("--query-id", help="stable run id; random when omitted")
    query.add_argument("--config")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--workspace", required=True)
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.add_argument("--config")

    ev = sub.add_parser("eval", help="evaluation utilities")
    ev_sub = ev.add_subparsers(dest="eval_command", required=True)
    report = ev_sub.add_parser("report", help="tally adjudications into metric tables")
    report.add_argument("--adjudications", required=True, help="adjudication JSONL")
    report.add_argument("--out-json")
    report.add_argument("--out-csv")

    return parser


def cmd_ingest(args) -> int:
    workspace = Workspace(args.workspace, args.config)
    report = workspace.ingest(args.corpus, args.molecules)
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def cmd_index(args) -> int:
    workspace = Workspace(args.workspace, args.config)
    count = workspace.build_index()
    print(json.dumps({"indexed_chunks": count}))
    return EXIT_OK


def cmd_query(args) -> int:
    workspace = Workspace(args.workspace, args.config)
    runner = workspace.load_runner()
    run_id = args.query_id or uuid.uuid4().hex
    runs = RunStore(workspace.runs_db_path, workspace.traces_dir)
    try:
        runs.create(run_id, args.query, args.molecule)
        trace = TraceWriter(run_id, path=runs.trace_path(run_id))
        try:
            result = runner.run(args.query, args.molecule, run_id, trace)
        except Exception:
            runs.fail(run_id, "pipeline error")
            raise
        finally:
            trace.close()
        runs.complete(run_id, result.answer.to_dict(), result.structured.to_dict())
    finally:
        runs.close()
    payload = {
        "run_id": run_id,
        "answer": result.answer.to_dict(),
        "structured": result.structured.to_dict(),
    }
    sys.stdout.write(canonical_json_bytes(payload).decode("utf-8") + "\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from evidesk.service.app import create_app

    workspace = Workspace(args.workspace, args.config)
    service_cfg = workspace.config.service
    host = args.host or service_cfg.host
    port = args.port if args.port is not None else service_cfg.port
    uvicorn.run(create_app(workspace), host=host, port=port)
    return EXIT_OK


def cmd_eval_report(args) -> int:
    store = AdjudicationStore(args.adjudications)
    if len(store) == 0:
        print("no adjudications found", file=sys.stderr)
        return EXIT_USER_ERROR
    reports = {}
    for benchmark_query in BENCHMARK_QUERIES:
        counts = tally(store.records(benchmark_query), benchmark_query)
        if counts.total:
            reports[benchmark_query] = compute_metrics(counts)
    if args.out_json:
        write_metrics_json(reports, args.out_json)
    if args.out_csv:
        write_metrics_csv(reports, args.out_csv)
    for benchmark_query in sorted(reports):
        report = reports[benchmark_query]
        print(
            f"{benchmark_query}: n={report.counts.total} "
            f"accuracy={report.accuracy if report.accuracy is None else round(report.accuracy, 4)}"
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "ingest": cmd_ingest,
        "index": cmd_index,
        "query": cmd_query,
        "serve": cmd_serve,
        "eval": cmd_eval_report,
    }
    try:
        return handlers[args.command](args)
    except (EvideskError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER_ERROR
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
