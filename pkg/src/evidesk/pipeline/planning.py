"""Query classification and decomposition into per-domain sub-queries."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from evidesk.corpus.records import MoleculeRegistry
from evidesk.errors import ParseFailure, ProviderUnavailable
from evidesk.providers.base import ROLE_CLASSIFY, LlmProvider

PRECLINICAL = "preclinical"
CLINICAL = "clinical"
STRATEGIC = "strategic"
DOMAIN_ORDER = (PRECLINICAL, CLINICAL, STRATEGIC)

_SCOPE_PHRASES = {
    PRECLINICAL: "preclinical scope: animal and in vitro evidence",
    CLINICAL: "clinical scope: human study evidence",
    STRATEGIC: "strategic scope: program and portfolio decisions",
}

_STANDALONE_CLINICAL = re.compile(r"(?<!pre)(?<!pre-)clinical")


@dataclass
class Classification:
    domains: tuple[str, ...]
    question_types: tuple[str, ...]
    source: str  # "llm" or "rules"


@dataclass
class SubQuery:
    sub_id: str
    domain: str
    text: str
    attempt: int = 1

    def to_dict(self) -> dict:
        return {
            "sub_id": self.sub_id,
            "domain": self.domain,
            "text": self.text,
            "attempt": self.attempt,
        }


@dataclass
class QueryPlan:
    query_id: str
    original_query: str
    molecule_id: str
    domains: tuple[str, ...]
    question_types: tuple[str, ...]
    classifier_source: str
    sub_queries: list[SubQuery] = field(default_factory=list)


def _order_domains(domains) -> tuple[str, ...]:
    return tuple(d for d in DOMAIN_ORDER if d in set(domains))


def rule_classify(query: str) -> Classification:
    """Keyword routing used whenever the classifier model is unusable.

    Rules fire independently and their outputs union; a question that is
    genuinely composite gets every matching type. A query matching nothing
    is sent to all domains under the catch-all type.
    """
    q = query.lower()

    def has(*phrases: str) -> bool:
        return any(p in q for p in phrases)

    domains: set[str] = set()
    types: set[str] = set()

    if has("first in human", "first-in-human", "fih"):
        domains.add(CLINICAL)
        types.add("FIH_DOSE")
    if has("route of administration"):
        domains.add(CLINICAL)
        types.add("ROA")
    sae = has("severe adverse", "serious adverse", "sae")
    if sae:
        domains.add(CLINICAL)
        types.add("SAE_DOSE")
    if has("highest dose", "maximum dose", "highest clinical dose") and not sae:
        domains.add(CLINICAL)
        types.add("MAX_DOSE")
    if has("efficac"):
        domains.add(CLINICAL)
        types.add("EFFICACIOUS_DOSE")
    if has("regimen", "dosing schedule"):
        domains.add(CLINICAL)
        types.add("REGIMEN")
    if has("margin of safety", "safety margin"):
        domains.update((PRECLINICAL, CLINICAL))
        types.add("SAFETY_MARGIN")
    if has("discontinu"):
        domains.add(STRATEGIC)
        types.add("DISCONTINUATION")
    if has("toxic", "toxicity", "hematotoxic", "hepatotoxic"):
        types.add("TOXICITY_EVIDENCE")
        mentions_pre = has("preclinical", "pre-clinical")
        mentions_clin = bool(_STANDALONE_CLINICAL.search(q))
        if mentions_pre:
            domains.add(PRECLINICAL)
        if mentions_clin:
            domains.add(CLINICAL)
        if not mentions_pre and not mentions_clin:
            domains.update((PRECLINICAL, CLINICAL))

    if not types:
        return Classification(
            domains=DOMAIN_ORDER, question_types=("GENERAL",), source="rules"
        )
    return Classification(
        domains=_order_domains(domains), question_types=tuple(sorted(types)), source="rules"
    )


def render_classify_prompt(query: str, known_types: list[str]) -> str:
    return (
        "Task: route a pharmaceutical research question.\n"
        f"Allowed domains: {', '.join(DOMAIN_ORDER)}.\n"
        f"Allowed question types: {', '.join(known_types)}.\n"
        'Respond with JSON: {"domains": [...], "question_types": [...]}.\n'
        f"Query: {query}"
    )


def parse_classify_response(response: str, known_types: list[str]) -> tuple[tuple, tuple]:
    try:
        data = json.loads(response)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"classify response is not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseFailure("classify response must be an object")
    domains = data.get("domains")
    types = data.get("question_types")
    if not isinstance(domains, list) or not domains:
        raise ParseFailure("classify response needs a non-empty domains list")
    if any(d not in DOMAIN_ORDER for d in domains):
        raise ParseFailure(f"unknown domain in {domains}")
    if not isinstance(types, list):
        raise ParseFailure("classify response needs a question_types list")
    if any(t not in known_types for t in types):
        raise ParseFailure(f"unknown question type in {types}")
    return _order_domains(domains), tuple(sorted(types))


def classify(
    query: str, llm: LlmProvider, known_types: list[str], call_llm=None
) -> Classification:
    """Try the classifier model, fall back to keyword rules on any failure.

    call_llm lets the runner wrap the provider so the exchange lands in the
    trace; it defaults to calling the provider directly.
    """
    prompt = render_classify_prompt(query, known_types)
    invoke = call_llm or (lambda role, p: llm.complete(role, p))
    try:
        response = invoke(ROLE_CLASSIFY, prompt)
        domains, types = parse_classify_response(response, known_types)
        return Classification(domains=domains, question_types=types, source="llm")
    except (ParseFailure, ProviderUnavailable):
        return rule_classify(query)


def resolve_molecule_names(text: str, registry: MoleculeRegistry) -> str:
    """Replace every registered alias with its canonical molecule id."""
    names = []
    for entry in registry.entries:
        for name in entry.all_names():
            names.append((name, entry.molecule_id))
    # Longer names first so "compound seven extended" wins over "compound".
    names.sort(key=lambda pair: (-len(pair[0]), pair[0]))
    out = text
    for name, molecule_id in names:
        pattern = re.compile(
            r"(?<![0-9A-Za-z_])" + re.escape(name) + r"(?![0-9A-Za-z_])", re.IGNORECASE
        )
        out = pattern.sub(molecule_id, out)
    return out


def build_plan(
    query_id: str,
    query: str,
    molecule_id: str,
    classification: Classification,
    registry: MoleculeRegistry | None,
) -> QueryPlan:
    """Expand a classified query into one sub-query per domain."""
    resolved = resolve_molecule_names(query, registry) if registry else query
    if molecule_id and not re.search(
        r"(?<![0-9A-Za-z_])" + re.escape(molecule_id) + r"(?![0-9A-Za-z_])",
        resolved,
        re.IGNORECASE,
    ):
        resolved = f"{resolved} for {molecule_id}"
    plan = QueryPlan(
        query_id=query_id,
        original_query=query,
        molecule_id=molecule_id,
        domains=classification.domains,
        question_types=classification.question_types,
        classifier_source=classification.source,
    )
    for domain in classification.domains:
        plan.sub_queries.append(
            SubQuery(
                sub_id=f"{query_id}/{domain}",
                domain=domain,
                text=f"{resolved} [{_SCOPE_PHRASES[domain]}]",
            )
        )
    return plan
