"""Per-branch research synthesis and the final composed answer."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from evidesk.corpus.store import ChunkStore
from evidesk.errors import ParseFailure, ProviderUnavailable
from evidesk.pipeline.planning import DOMAIN_ORDER, QueryPlan, SubQuery
from evidesk.providers.base import ROLE_RESEARCH
from evidesk.retrieval.candidates import Candidate

NULL_DOMAIN_NOTE = "no information was available in that domain"


@dataclass
class Finding:
    sub_id: str
    domain: str
    is_null: bool
    summary: str = ""
    evidence: list[dict] = field(default_factory=list)  # {"chunk_id", "quote"}
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "sub_id": self.sub_id,
            "domain": self.domain,
            "is_null": self.is_null,
            "summary": self.summary,
            "evidence": [dict(e) for e in self.evidence],
            "reason": self.reason,
        }


@dataclass
class AnswerSection:
    domain: str
    narrative: str
    findings: list[Finding]

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "narrative": self.narrative,
            "findings": [f.to_dict() for f in self.findings],
        }


@dataclass
class ComposedAnswer:
    query_id: str
    sections: list[AnswerSection]
    null_domain_notes: list[dict]  # {"domain", "note"}

    def to_dict(self) -> dict:
        return {
            "query_id": self.query_id,
            "sections": [s.to_dict() for s in self.sections],
            "null_domain_notes": [dict(n) for n in self.null_domain_notes],
        }

    def cited_chunk_ids(self) -> set[str]:
        return {
            e["chunk_id"]
            for section in self.sections
            for finding in section.findings
            for e in finding.evidence
        }


def canonical_json_bytes(payload: dict) -> bytes:
    """Stable byte encoding used wherever reproducibility is asserted."""
    return json.dumps(
        payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True
    ).encode("ascii")


def select_context(
    retained: list[Candidate], store: ChunkStore, budget_words: int
) -> list:
    """Admit retained chunks in gate order until the word budget is spent."""
    chunks = []
    used = 0
    for cand in retained:
        chunk = store.get(cand.chunk_id)
        if chunks and used + chunk.word_count > budget_words:
            continue
        chunks.append(chunk)
        used += chunk.word_count
    return chunks


def render_research_prompt(sub: SubQuery, chunks: list) -> str:
    blocks = []
    for chunk in chunks:
        blocks.append(f"[chunk_id={chunk.chunk_id}]\n{chunk.metadata_header}\n{chunk.text}")
    return (
        "Task: answer the sub-question strictly from the numbered evidence.\n"
        "Cite only the provided chunk ids.\n"
        'Respond with JSON: {"summary": "...", "evidence": '
        '[{"chunk_id": "...", "quote": "..."}]}.\n'
        f"Sub-question: {sub.text}\n"
        f"Domain: {sub.domain}\n"
        "Evidence:\n" + "\n\n".join(blocks)
    )


def parse_research_response(response: str, allowed_ids: set[str]) -> tuple[str, list[dict]]:
    try:
        data = json.loads(response)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"research response is not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseFailure("research response must be an object")
    summary = data.get("summary")
    evidence = data.get("evidence")
    if not isinstance(summary, str) or not summary.strip():
        raise ParseFailure("research response needs a non-empty summary")
    if not isinstance(evidence, list) or not evidence:
        raise ParseFailure("research response needs at least one evidence citation")
    cleaned = []
    for item in evidence:
        if not isinstance(item, dict) or "chunk_id" not in item or "quote" not in item:
            raise ParseFailure(f"bad evidence item: {item!r}")
        if item["chunk_id"] not in allowed_ids:
            # Provenance closure: citing outside the retained set is a
            # response defect, not something to silently repair.
            raise ParseFailure(f"cited chunk {item['chunk_id']} was not retained")
        cleaned.append({"chunk_id": item["chunk_id"], "quote": str(item["quote"])})
    return summary.strip(), cleaned


def research(
    sub: SubQuery,
    retained: list[Candidate],
    store: ChunkStore,
    call_llm,
    budget_words: int = 6000,
) -> Finding:
    """Synthesize a branch finding from its retained evidence.

    Any response defect degrades to a null finding for this branch; the
    run always completes.
    """
    chunks = select_context(retained, store, budget_words)
    if not chunks:
        return Finding(
            sub_id=sub.sub_id,
            domain=sub.domain,
            is_null=True,
            reason="no retained evidence",
        )
    prompt = render_research_prompt(sub, chunks)
    allowed = {chunk.chunk_id for chunk in chunks}
    try:
        summary, evidence = parse_research_response(call_llm(ROLE_RESEARCH, prompt), allowed)
    except (ParseFailure, ProviderUnavailable) as exc:
        return Finding(
            sub_id=sub.sub_id,
            domain=sub.domain,
            is_null=True,
            reason=f"research synthesis unavailable: {type(exc).__name__}",
        )
    return Finding(
        sub_id=sub.sub_id, domain=sub.domain, is_null=False, summary=summary, evidence=evidence
    )


def supervise(plan: QueryPlan, findings: list[Finding]) -> ComposedAnswer:
    """Merge branch findings into the final answer.

    Composition is deterministic: sections keep the fixed domain order,
    narratives concatenate the non-null summaries, and every domain the
    plan requested shows up exactly once, either as a section or as a
    null-domain note.
    """
    by_domain: dict[str, list[Finding]] = {}
    for finding in findings:
        by_domain.setdefault(finding.domain, []).append(finding)

    sections: list[AnswerSection] = []
    null_notes: list[dict] = []
    for domain in DOMAIN_ORDER:
        if domain not in plan.domains:
            continue
        group = by_domain.get(domain, [])
        useful = [f for f in group if not f.is_null]
        if useful:
            narrative = "\n\n".join(f.summary for f in useful)
            sections.append(AnswerSection(domain=domain, narrative=narrative, findings=useful))
        else:
            null_notes.append({"domain": domain, "note": NULL_DOMAIN_NOTE})
    return ComposedAnswer(
        query_id=plan.query_id, sections=sections, null_domain_notes=null_notes
    )
