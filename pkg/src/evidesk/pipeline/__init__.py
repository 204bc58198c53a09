"""Multi-stage answer pipeline: plan, retrieve, gate, research, compose."""

from evidesk.pipeline.planning import (
    DOMAIN_ORDER,
    Classification,
    QueryPlan,
    SubQuery,
    build_plan,
    classify,
    rule_classify,
)
from evidesk.pipeline.gating import gate_decision, refine_or_proceed, review_gate
from evidesk.pipeline.synthesis import (
    NULL_DOMAIN_NOTE,
    AnswerSection,
    ComposedAnswer,
    Finding,
    research,
    supervise,
)
from evidesk.pipeline.tracing import TraceEvent, TraceWriter, check_trace_grammar, provenance_report
from evidesk.pipeline.runner import PipelineRunner, RunResult

__all__ = [
    "DOMAIN_ORDER",
    "Classification",
    "QueryPlan",
    "SubQuery",
    "build_plan",
    "classify",
    "rule_classify",
    "gate_decision",
    "refine_or_proceed",
    "review_gate",
    "NULL_DOMAIN_NOTE",
    "AnswerSection",
    "ComposedAnswer",
    "Finding",
    "research",
    "supervise",
    "TraceEvent",
    "TraceWriter",
    "check_trace_grammar",
    "provenance_report",
    "PipelineRunner",
    "RunResult",
]
