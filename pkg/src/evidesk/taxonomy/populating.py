"""Populate a composite schema from a composed answer."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from evidesk.errors import ParseFailure, ProviderUnavailable
from evidesk.providers.base import ROLE_TAXONOMY
from evidesk.taxonomy.composing import CompositeSchema

if TYPE_CHECKING:  # avoids a cycle with the pipeline package at import time
    from evidesk.pipeline.synthesis import ComposedAnswer

REASON_NOT_FOUND = "not found in evidence"
REASON_NO_PROVENANCE = "no provenance cited"
REASON_OUTSIDE_EVIDENCE = "cited evidence outside the answer"
REASON_UNAVAILABLE = "structured mapping unavailable"


@dataclass
class PopulatedField:
    value: object
    chunk_ids: list[str]
    origin_type: str

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "chunk_ids": list(self.chunk_ids),
            "origin_type": self.origin_type,
        }


@dataclass
class StructuredOutput:
    query_id: str
    source_type_ids: list[str]
    fields: dict[str, PopulatedField] = field(default_factory=dict)
    unpopulated: list[dict] = field(default_factory=list)  # {"field_id", "reason"}

    def to_dict(self) -> dict:
        return {
            "query_id": self.query_id,
            "source_type_ids": list(self.source_type_ids),
            "fields": {fid: self.fields[fid].to_dict() for fid in sorted(self.fields)},
            "unpopulated": sorted(self.unpopulated, key=lambda u: u["field_id"]),
        }

    def cited_chunk_ids(self) -> set[str]:
        return {cid for pf in self.fields.values() for cid in pf.chunk_ids}


def render_populate_prompt(schema: CompositeSchema, answer: ComposedAnswer, molecule_id: str) -> str:
    lines = []
    for cf in schema.fields:
        spec = cf.spec
        requirement = "required" if spec.required else "optional"
        lines.append(f"- {spec.field_id} ({spec.value_kind}, {requirement}): {spec.label}")
    return (
        "Task: fill the answer schema strictly from the findings below.\n"
        'Respond with JSON mapping field_id to {"value": ..., "chunk_ids": [...]}.\n'
        "Cite chunk ids only from the findings' evidence lists.\n"
        f"Molecule: {molecule_id}\n"
        "Fields:\n" + "\n".join(lines) + "\n"
        "Findings JSON:\n" + json.dumps(answer.to_dict(), sort_keys=True, ensure_ascii=True)
    )


def _skip(out: StructuredOutput, field_id: str, reason: str):
    out.unpopulated.append({"field_id": field_id, "reason": reason})


def populate(
    schema: CompositeSchema,
    answer: ComposedAnswer,
    molecule_id: str,
    call_llm,
) -> StructuredOutput:
    """Map the composed answer onto the schema, field by field.

    Every schema field ends up either populated with value plus citations
    or listed as unpopulated with a reason; extraction failures degrade,
    they never raise. A populated field's citations must come from the
    answer's own evidence, otherwise the field is rejected.
    """
    out = StructuredOutput(query_id=answer.query_id, source_type_ids=list(schema.source_type_ids))
    allowed = answer.cited_chunk_ids()
    if not allowed:
        for cf in schema.fields:
            _skip(out, cf.spec.field_id, REASON_NOT_FOUND)
        return out

    prompt = render_populate_prompt(schema, answer, molecule_id)
    try:
        response = call_llm(ROLE_TAXONOMY, prompt)
        data = json.loads(response)
        if not isinstance(data, dict):
            raise ParseFailure("structured response must be an object")
    except (ParseFailure, ProviderUnavailable, json.JSONDecodeError) as exc:
        reason = f"{REASON_UNAVAILABLE}: {type(exc).__name__}"
        for cf in schema.fields:
            _skip(out, cf.spec.field_id, reason)
        return out

    for cf in schema.fields:
        field_id = cf.spec.field_id
        item = data.get(field_id)
        if not isinstance(item, dict) or item.get("value") is None:
            _skip(out, field_id, REASON_NOT_FOUND)
            continue
        chunk_ids = item.get("chunk_ids")
        if not isinstance(chunk_ids, list) or not chunk_ids:
            _skip(out, field_id, REASON_NO_PROVENANCE)
            continue
        if any(cid not in allowed for cid in chunk_ids):
            _skip(out, field_id, REASON_OUTSIDE_EVIDENCE)
            continue
        out.fields[field_id] = PopulatedField(
            value=item["value"],
            chunk_ids=[str(cid) for cid in chunk_ids],
            origin_type=cf.origins[0],
        )
    return out
