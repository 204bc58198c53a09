"""Write a runnable demo input set for the command line flow.

    python3 -m evidesk.fixtures DIR

DIR receives corpus.jsonl, molecules.json, script.jsonl, queries.json,
and config.toml. The script answers the nine canned queries when they
are run with the query ids listed in queries.json. The stub model
declines prompts it has no recording for, so straying from the listed
ids or wording degrades honestly: unanswered stages report null rather
than inventing content.
"""

import argparse
import json
from pathlib import Path

from evidesk.fixtures.corpus import GOLDEN_QUERIES, build_fixture_env, write_fixture_inputs
from evidesk.fixtures.recording import RecordingLlm
from evidesk.pipeline.runner import PipelineRunner
from evidesk.pipeline.tracing import TraceWriter
from evidesk.providers.base import ProviderSuite
from evidesk.providers.stub import HashingEmbedder, OverlapReranker


def demo_query_id(golden) -> str:
    return f"golden-{golden.type_id.lower()}"


def main(argv=None):
    parser = argparse.ArgumentParser(description="write demo inputs for the CLI flow")
    parser.add_argument("dir", nargs="?", default="demo", help="output directory")
    args = parser.parse_args(argv)
    out = Path(args.dir)

    write_fixture_inputs(out)
    store, indexes, registry, library, config = build_fixture_env()
    recorder = RecordingLlm()
    for golden in GOLDEN_QUERIES:
        runner = PipelineRunner(
            store=store,
            indexes=indexes,
            providers=ProviderSuite(
                embedder=HashingEmbedder(config.providers.dimension),
                reranker=OverlapReranker(),
                llm=recorder,
            ),
            library=library,
            registry=registry,
            config=config,
        )
        query_id = demo_query_id(golden)
        runner.run(golden.query, golden.molecule_id, query_id, TraceWriter(query_id))

    script_path = out / "script.jsonl"
    recorder.write_script(script_path)
    queries = [
        {"query_id": demo_query_id(g), "query": g.query, "molecule_id": g.molecule_id}
        for g in GOLDEN_QUERIES
    ]
    (out / "queries.json").write_text(json.dumps(queries, indent=2) + "\n", encoding="utf-8")
    # absolute path so the config works from any workspace location
    (out / "config.toml").write_text(
        f'[providers]\nmode = "stub"\nscript_path = "{script_path.resolve()}"\n',
        encoding="utf-8",
    )
    print(f"wrote demo inputs under {out}/")


if __name__ == "__main__":
    main()
