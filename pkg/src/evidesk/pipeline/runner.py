"""End-to-end pipeline execution with full tracing."""

from __future__ import annotations

from dataclasses import dataclass

from evidesk.config import EngineConfig
from evidesk.corpus.records import MoleculeRegistry
from evidesk.corpus.store import ChunkStore
from evidesk.errors import EmptyQuery, ParseFailure, ProviderUnavailable
from evidesk.pipeline.gating import GIVE_UP, PROCEED, REFINE, refine_or_proceed, review_gate
from evidesk.pipeline.planning import QueryPlan, SubQuery, build_plan, classify
from evidesk.pipeline.synthesis import (
    ComposedAnswer,
    Finding,
    research,
    supervise,
)
from evidesk.pipeline.tracing import (
    STAGE_CLASSIFY,
    STAGE_DECOMPOSE,
    STAGE_GATE,
    STAGE_LLM,
    STAGE_REFINE,
    STAGE_RESEARCH,
    STAGE_RETRIEVE,
    STAGE_SUPERVISE,
    STAGE_TAXONOMY,
    TraceWriter,
)
from evidesk.providers.base import ProviderSuite
from evidesk.providers.stub import prompt_digest
from evidesk.retrieval.candidates import Candidate, fuse_dedup
from evidesk.retrieval.snapshot import IndexBundle
from evidesk.taxonomy.composing import compose, match_question_types
from evidesk.taxonomy.library import SchemaLibrary
from evidesk.taxonomy.populating import StructuredOutput, populate


@dataclass
class RunResult:
    plan: QueryPlan
    answer: ComposedAnswer
    structured: StructuredOutput
    findings: list[Finding]


class PipelineRunner:
    def __init__(
        self,
        store: ChunkStore,
        indexes: IndexBundle,
        providers: ProviderSuite,
        library: SchemaLibrary,
        registry: MoleculeRegistry | None = None,
        config: EngineConfig | None = None,
    ):
        self.store = store
        self.indexes = indexes
        self.providers = providers
        self.library = library
        self.registry = registry
        self.config = config or EngineConfig()

    def _traced_llm(self, trace: TraceWriter):
        """Wrap the provider so every exchange lands in the trace once,
        failures included."""

        def call(role: str, prompt: str) -> str:
            trace_id = trace.next_llm_trace_id()
            try:
                response = self.providers.llm.complete(role, prompt)
            except (ParseFailure, ProviderUnavailable) as exc:
                trace.emit(
                    STAGE_LLM,
                    {
                        "trace_id": trace_id,
                        "role": role,
                        "prompt": prompt,
                        "prompt_digest": prompt_digest(prompt),
                        "response": None,
                        "error": type(exc).__name__,
                    },
                )
                raise
            trace.emit(
                STAGE_LLM,
                {
                    "trace_id": trace_id,
                    "role": role,
                    "prompt": prompt,
                    "prompt_digest": prompt_digest(prompt),
                    "response": response,
                    "error": None,
                },
            )
            return response

        return call

    def _retrieve(self, sub: SubQuery, trace: TraceWriter) -> list[Candidate]:
        cfg = self.config.retrieval
        lists: list[list[Candidate]] = []
        try:
            lists.append(self.indexes.lexical.search(sub.text, k=cfg.k))
        except EmptyQuery:
            lists.append([])
        embedder = self.providers.embedder
        lists.append(
            self.indexes.dense.search(
                embedder.embed_single(sub.text), threshold=cfg.dense_threshold, k=cfg.k
            )
        )
        lists.append(
            self.indexes.multivector.search(
                embedder.embed_multi(sub.text), threshold=cfg.maxsim_threshold, k=cfg.k
            )
        )
        fused = fuse_dedup(lists)
        trace.emit(
            STAGE_RETRIEVE,
            {
                "sub_id": sub.sub_id,
                "attempt": sub.attempt,
                "query_text": sub.text,
                "k": cfg.k,
                "per_retriever": [len(l) for l in lists],
                "candidates": [c.to_dict() for c in fused],
            },
        )
        return fused

    def _run_branch(self, sub: SubQuery, molecule_id: str, trace: TraceWriter) -> Finding:
        call_llm = self._traced_llm(trace)
        current = sub
        while True:
            candidates = self._retrieve(current, trace)
            retained = review_gate(
                current,
                candidates,
                self.providers.reranker,
                self.store,
                call_llm,
                threshold=self.config.gate.rerank_threshold,
            )
            trace.emit(
                STAGE_GATE,
                {
                    "sub_id": current.sub_id,
                    "attempt": current.attempt,
                    "candidates": [c.to_dict() for c in candidates],
                    "retained_ids": [c.chunk_id for c in retained],
                },
            )
            action, refined = refine_or_proceed(
                current,
                retained,
                self.registry,
                molecule_id,
                max_refinements=self.config.pipeline.max_refinements,
            )
            if action == REFINE:
                trace.emit(
                    STAGE_REFINE,
                    {
                        "sub_id": current.sub_id,
                        "attempt": refined.attempt,
                        "previous_text": current.text,
                        "text": refined.text,
                        "reason": "gate retained nothing",
                    },
                )
                current = refined
                continue
            if action == PROCEED:
                finding = research(
                    current,
                    retained,
                    self.store,
                    call_llm,
                    budget_words=self.config.pipeline.context_budget_words,
                )
            else:
                assert action == GIVE_UP
                finding = Finding(
                    sub_id=current.sub_id,
                    domain=current.domain,
                    is_null=True,
                    reason="no evidence retained after refinements",
                )
            trace.emit(
                STAGE_RESEARCH,
                {
                    "sub_id": current.sub_id,
                    "attempt": current.attempt,
                    **finding.to_dict(),
                },
            )
            return finding

    def run(self, query: str, molecule_id: str, query_id: str, trace: TraceWriter) -> RunResult:
        call_llm = self._traced_llm(trace)
        classification = classify(query, self.providers.llm, self.library.type_ids(), call_llm)
        trace.emit(
            STAGE_CLASSIFY,
            {
                "query": query,
                "domains": list(classification.domains),
                "question_types": list(classification.question_types),
                "source": classification.source,
            },
        )
        plan = build_plan(query_id, query, molecule_id, classification, self.registry)
        trace.emit(
            STAGE_DECOMPOSE,
            {"sub_queries": [s.to_dict() for s in plan.sub_queries]},
        )

        findings = [
            self._run_branch(sub, plan.molecule_id, trace) for sub in plan.sub_queries
        ]

        answer = supervise(plan, findings)
        trace.emit(STAGE_SUPERVISE, {"answer": answer.to_dict()})

        types = match_question_types(query, plan.question_types, self.library)
        schema = compose(types)
        structured = populate(schema, answer, plan.molecule_id, call_llm)
        trace.emit(
            STAGE_TAXONOMY,
            {"schema": schema.to_dict(), "structured": structured.to_dict()},
        )
        return RunResult(plan=plan, answer=answer, structured=structured, findings=findings)
