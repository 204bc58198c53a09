"""A rule-driven language model over the fixture archive.

RecordingLlm answers judge, research, and schema prompts with fixed
extraction rules and records every exchange, so any run over the fixture
corpus can be replayed through ScriptedLlm byte for byte. The classify
role is deliberately declined: the planner's keyword fallback covers the
fixture queries, and declining exercises that path exactly as replay does.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from evidesk.errors import ParseFailure
from evidesk.providers.base import (
    ROLE_JUDGE,
    ROLE_RESEARCH,
    ROLE_TAXONOMY,
    LlmProvider,
)
from evidesk.providers.stub import ScriptedLlm, prompt_digest
from evidesk.words import index_tokens

_SUB_RE = re.compile(r"Sub-question: (.+)")
_BANNER_RE = re.compile(r"Passage banner: (.+)")
_MOLECULE_ID_RE = re.compile(r"\bRX-\d+\b")
_FIELD_LINE_RE = re.compile(r"^- (\w+) \((\w+), (required|optional)\):", re.MULTILINE)
_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")

_QTY = r"(\d+(?:\.\d+)? mg)"


def _judge(prompt: str) -> str:
    sub_text = _SUB_RE.search(prompt).group(1)
    banner = _BANNER_RE.search(prompt).group(1)
    ids = _MOLECULE_ID_RE.findall(sub_text)
    scope = re.search(r"\[(preclinical|clinical|strategic) scope", sub_text)
    stage = banner.split("|")[2].strip()
    molecule_ok = not ids or any(mid in banner for mid in ids)
    stage_ok = scope is None or stage in ("unknown", scope.group(1))
    return "RELEVANT" if (molecule_ok and stage_ok) else "IRRELEVANT"


def _best_sentence(text: str, question_tokens: set[str]) -> str:
    best, best_score = "", -1
    for sentence in _SENTENCE_SPLIT.split(text.strip()):
        score = len(set(index_tokens(sentence)) & question_tokens)
        if score > best_score:
            best, best_score = sentence.strip(), score
    return best


def _research(prompt: str) -> str:
    sub_text = _SUB_RE.search(prompt).group(1)
    question_tokens = set(index_tokens(sub_text))
    evidence = []
    for block in prompt.split("Evidence:\n", 1)[1].split("\n\n"):
        lines = block.split("\n", 2)
        if len(lines) < 3 or not lines[0].startswith("[chunk_id="):
            continue
        chunk_id = lines[0][len("[chunk_id=") : -1]
        evidence.append(
            {"chunk_id": chunk_id, "quote": _best_sentence(lines[2], question_tokens)}
        )
    if not evidence:
        raise ParseFailure("research prompt carried no evidence blocks")
    top = evidence[0]["quote"]
    if len(evidence) > 1:
        extra = len(evidence) - 1
        noun = "passage" if extra == 1 else "passages"
        summary = f"{top} {extra} further {noun} corroborate this."
    else:
        summary = top
    return json.dumps({"summary": summary, "evidence": evidence})


class _Findings:
    """Flattened view of the composed answer embedded in a schema prompt."""

    def __init__(self, molecule: str, answer: dict):
        self.molecule = molecule
        self.quotes: list[tuple[str, str, str]] = []  # chunk_id, quote, domain
        self.summaries: list[str] = []
        seen: dict[str, None] = {}
        for section in answer.get("sections", []):
            for finding in section.get("findings", []):
                if finding.get("summary"):
                    self.summaries.append(finding["summary"])
                for item in finding.get("evidence", []):
                    self.quotes.append(
                        (item["chunk_id"], item.get("quote", ""), section["domain"])
                    )
                    seen.setdefault(item["chunk_id"])
        self.ids = list(seen)

    def first_match(self, pattern: str):
        rx = re.compile(pattern, re.IGNORECASE)
        for chunk_id, quote, _ in self.quotes:
            m = rx.search(quote)
            if m:
                return m, chunk_id, quote
        return None, None, None

    def domain_ids(self, domain: str) -> list[str]:
        out: dict[str, None] = {}
        for chunk_id, _, dom in self.quotes:
            if dom == domain:
                out.setdefault(chunk_id)
        return list(out)


def _value_rule(pattern: str):
    def rule(ctx: _Findings):
        m, cid, _ = ctx.first_match(pattern)
        return (m.group(1), [cid]) if m else None

    return rule


def _quote_rule(pattern: str):
    # the whole matching sentence is the value, useful for context fields
    def rule(ctx: _Findings):
        m, cid, quote = ctx.first_match(pattern)
        return (quote, [cid]) if m else None

    return rule


def _study_phase(ctx: _Findings):
    m, cid, quote = ctx.first_match(r"highest dose[^.]*?" + _QTY)
    if m:
        phase = re.search(r"\b(phase \d)\b", quote, re.IGNORECASE)
        if phase:
            return phase.group(1).lower(), [cid]
    m, cid, _ = ctx.first_match(r"\b(phase \d)\b")
    return (m.group(1).lower(), [cid]) if m else None


def _margin_summary(ctx: _Findings):
    noael, noael_cid, _ = ctx.first_match(r"\bnoael[^.]*?(\d+(?:\.\d+)? mg/kg(?:/day)?)")
    dose, dose_cid, _ = ctx.first_match(r"received " + _QTY + r" once daily")
    if noael and dose:
        value = (
            f"Preclinical NOAEL {noael.group(1)} against a clinical dose of "
            f"{dose.group(1)} once daily."
        )
        return value, [noael_cid, dose_cid]
    if ctx.quotes:
        chunk_id, quote, _ = ctx.quotes[0]
        return quote, [chunk_id]
    return None


def _development_phase(ctx: _Findings):
    m, cid, quote = ctx.first_match(r"discontinu")
    pool = [(cid, quote)] if m else []
    pool.extend((c, q) for c, q, _ in ctx.quotes)
    for chunk_id, text in pool:
        if re.search(r"\bpreclinical\b", text, re.IGNORECASE):
            return "preclinical", [chunk_id]
        phase = re.search(r"\b(phase \d)\b", text, re.IGNORECASE)
        if phase:
            return phase.group(1).lower(), [chunk_id]
        if re.search(r"\bclinical\b", text, re.IGNORECASE):
            return "clinical", [chunk_id]
    return None


def _toxicity_flag(ctx: _Findings):
    cited: dict[str, None] = {}
    for chunk_id, quote, _ in ctx.quotes:
        if re.search(r"hepatotox|hematotox|necrosis|transaminase", quote, re.IGNORECASE):
            cited.setdefault(chunk_id)
    if cited:
        return True, list(cited)
    return None


def _sae_description(ctx: _Findings):
    # tied to the dose match so a "no serious adverse events" sentence from
    # another study can never become the description
    m, cid, quote = ctx.first_match(r"serious adverse events?[^.]*?" + _QTY)
    return (quote, [cid]) if m else None


def _domain_evidence(domain: str):
    def rule(ctx: _Findings):
        ids = ctx.domain_ids(domain)
        return (ids, ids) if ids else None

    return rule


def _answer_summary(ctx: _Findings):
    if ctx.summaries and ctx.ids:
        return ctx.summaries[0], ctx.ids[:1]
    return None


_FIELD_RULES = {
    "molecule_id": lambda ctx: (ctx.molecule, ctx.ids[:1]) if ctx.ids else None,
    "supporting_evidence": lambda ctx: (sorted(ctx.ids), list(ctx.ids)) if ctx.ids else None,
    "fih_dose": _value_rule(r"first in human dose[^.]*?" + _QTY),
    "dose_context": _quote_rule(r"first in human dose"),
    "route": _value_rule(r"\b(oral|intravenous|subcutaneous|topical)\b"),
    "route_context": _quote_rule(r"\b(?:oral|intravenous|subcutaneous|topical)\b"),
    "highest_dose": _value_rule(r"highest dose[^.]*?" + _QTY),
    "study_phase": _study_phase,
    "sae_dose": _value_rule(r"serious adverse events?[^.]*?" + _QTY),
    "sae_description": _sae_description,
    "efficacious_dose": _value_rule(r"efficacious dose[^.]*?" + _QTY),
    "efficacy_context": _quote_rule(r"efficac"),
    "dose_levels": _value_rule(r"received " + _QTY),
    "frequency": _value_rule(r"\b(once daily|twice daily|once weekly)\b"),
    "duration": _value_rule(r"\bfor (\d+ (?:days|weeks))\b"),
    "margin_summary": _margin_summary,
    "preclinical_noael": _value_rule(r"\bnoael[^.]*?(\d+(?:\.\d+)? mg/kg(?:/day)?)"),
    "clinical_reference_dose": _value_rule(r"received " + _QTY + r" once daily"),
    "primary_reason": _quote_rule(r"discontinu"),
    "development_phase": _development_phase,
    "toxicity_conclusion": _toxicity_flag,
    "affected_species": _value_rule(r"\b(rat|dog|mouse|rabbit|monkey|cynomolgus)\b"),
    "preclinical_evidence": _domain_evidence("preclinical"),
    "clinical_evidence": _domain_evidence("clinical"),
    "answer_summary": _answer_summary,
}


def _taxonomy(prompt: str) -> str:
    molecule = re.search(r"Molecule: (.+)", prompt).group(1)
    findings = json.loads(prompt.split("Findings JSON:\n", 1)[1])
    ctx = _Findings(molecule, findings)
    out = {}
    for field_id in _FIELD_LINE_RE.findall(prompt):
        rule = _FIELD_RULES.get(field_id[0])
        if rule is None:
            continue
        result = rule(ctx)
        if result is not None:
            value, chunk_ids = result
            out[field_id[0]] = {"value": value, "chunk_ids": chunk_ids}
    return json.dumps(out)


class RecordingLlm(LlmProvider):
    def __init__(self):
        self._handlers = {
            ROLE_JUDGE: _judge,
            ROLE_RESEARCH: _research,
            ROLE_TAXONOMY: _taxonomy,
        }
        self.exchanges: list[tuple[str, str, str]] = []

    def complete(self, role: str, prompt: str) -> str:
        handler = self._handlers.get(role)
        if handler is None:
            raise ParseFailure(f"no extraction rules for role {role}")
        response = handler(prompt)
        self.exchanges.append((role, prompt, response))
        return response

    def to_scripted(self) -> ScriptedLlm:
        return ScriptedLlm(
            {(role, prompt_digest(prompt)): response for role, prompt, response in self.exchanges}
        )

    def write_script(self, path: str | Path):
        self.to_scripted().to_jsonl(path)
