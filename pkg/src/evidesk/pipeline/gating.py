"""Relevance gate: rerank score AND model judgment, with refinement."""

from __future__ import annotations

import re

from evidesk.corpus.records import MoleculeRegistry
from evidesk.corpus.store import ChunkStore
from evidesk.errors import EmptyInput, ParseFailure, ProviderUnavailable
from evidesk.pipeline.planning import SubQuery
from evidesk.providers.base import ROLE_JUDGE, RerankProvider
from evidesk.retrieval.candidates import Candidate

RELEVANT = "RELEVANT"
IRRELEVANT = "IRRELEVANT"

PROCEED = "proceed"
REFINE = "refine"
GIVE_UP = "give_up_null"


def gate_decision(rerank_unit_score: float, judgment: str | None, threshold: float = 0.7) -> bool:
    """A candidate survives only with both a score at or above the threshold
    and an explicit RELEVANT judgment."""
    return rerank_unit_score >= threshold and judgment == RELEVANT


def render_judge_prompt(sub_text: str, banner: str, chunk_text: str) -> str:
    return (
        "Task: decide whether the evidence passage answers the sub-question.\n"
        f"Respond with exactly one word: {RELEVANT} or {IRRELEVANT}.\n"
        f"Sub-question: {sub_text}\n"
        f"Passage banner: {banner}\n"
        "Passage:\n"
        f"{chunk_text}"
    )


def parse_judgment(response: str) -> str:
    verdict = response.strip().upper()
    if verdict not in (RELEVANT, IRRELEVANT):
        raise ParseFailure(f"judgment must be {RELEVANT} or {IRRELEVANT}, got {response!r}")
    return verdict


def review_gate(
    sub: SubQuery,
    candidates: list[Candidate],
    reranker: RerankProvider,
    store: ChunkStore,
    call_llm,
    threshold: float = 0.7,
) -> list[Candidate]:
    """Annotate candidates in place and return the retained ones in order.

    The reranker runs first; the judgment model is only consulted for
    candidates that clear the score bar, so a cheap below-threshold
    rejection never spends a model call. Judgment failures count as
    not retained rather than aborting the run.
    """
    retained: list[Candidate] = []
    for cand in candidates:
        chunk = store.get(cand.chunk_id)
        try:
            verdict = reranker.rerank(sub.text, chunk.indexed_text())
        except EmptyInput:
            cand.retained = False
            cand.verdict_reason = "rerank unusable: empty input"
            continue
        cand.scores["rerank"] = verdict.unit_score
        if verdict.unit_score < threshold:
            cand.retained = False
            cand.verdict_reason = f"rerank {verdict.unit_score:.4f} below threshold {threshold}"
            continue
        prompt = render_judge_prompt(sub.text, chunk.metadata_header, chunk.text)
        try:
            cand.judgment = parse_judgment(call_llm(ROLE_JUDGE, prompt))
        except (ParseFailure, ProviderUnavailable) as exc:
            cand.retained = False
            cand.verdict_reason = f"judgment unavailable: {type(exc).__name__}"
            continue
        cand.retained = gate_decision(verdict.unit_score, cand.judgment, threshold)
        cand.verdict_reason = (
            f"rerank {verdict.unit_score:.4f} at or above {threshold}, judged {cand.judgment}"
        )
        if cand.retained:
            retained.append(cand)
    return retained


_YEAR_RE = re.compile(r"\b(?:19|20)\d{2}\b")
_PHASE_RE = re.compile(r"\bphase\s+(?:[ivx]+|\d+)\b", re.IGNORECASE)
_ESCALATION_TAG_RE = re.compile(r"\((?:mad|sad)\)", re.IGNORECASE)


def rewrite_for_refinement(text: str, registry: MoleculeRegistry | None, molecule_id: str) -> str:
    """Broaden a sub-query: drop its most restrictive qualifiers (years,
    phase numbers, escalation tags) and expand the molecule's aliases."""
    out = _YEAR_RE.sub(" ", text)
    out = _PHASE_RE.sub(" ", out)
    out = _ESCALATION_TAG_RE.sub(" ", out)
    out = re.sub(r"\s{2,}", " ", out).strip()
    aliases = registry.aliases_for(molecule_id) if (registry and molecule_id) else []
    if aliases:
        out = f"{out} (also known as: {', '.join(aliases)})"
    return out


def refine_or_proceed(
    sub: SubQuery,
    retained: list[Candidate],
    registry: MoleculeRegistry | None,
    molecule_id: str,
    max_refinements: int = 2,
) -> tuple[str, SubQuery | None]:
    """Decide the branch's next step after a gate pass.

    Evidence in hand means proceed. An empty gate allows at most
    max_refinements rewrites; after that the branch gives up and reports a
    null result instead of looping.
    """
    if retained:
        return PROCEED, None
    if sub.attempt <= max_refinements:
        return REFINE, SubQuery(
            sub_id=sub.sub_id,
            domain=sub.domain,
            text=rewrite_for_refinement(sub.text, registry, molecule_id),
            attempt=sub.attempt + 1,
        )
    return GIVE_UP, None
