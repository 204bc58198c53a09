"""Composite schemas for queries spanning several question types."""

from __future__ import annotations

from dataclasses import dataclass, field

from evidesk.taxonomy.library import QuestionType, SchemaField, SchemaLibrary


@dataclass
class ComposedField:
    spec: SchemaField
    origins: list[str]  # type_ids contributing this field, first one wins

    def to_dict(self) -> dict:
        return {**self.spec.to_dict(), "origins": list(self.origins)}


@dataclass
class CompositeSchema:
    source_type_ids: list[str]
    fields: list[ComposedField] = field(default_factory=list)

    def field_ids(self) -> list[str]:
        return [f.spec.field_id for f in self.fields]

    def required_field_ids(self) -> list[str]:
        return [f.spec.field_id for f in self.fields if f.spec.required]

    def get(self, field_id: str) -> ComposedField:
        for f in self.fields:
            if f.spec.field_id == field_id:
                return f
        raise KeyError(field_id)

    def to_dict(self) -> dict:
        return {
            "source_type_ids": list(self.source_type_ids),
            "fields": [f.to_dict() for f in self.fields],
        }


def match_question_types(
    query: str, classified_type_ids: tuple[str, ...], library: SchemaLibrary
) -> list[QuestionType]:
    """Pick the schemas a query needs.

    Classifier output and keyword routing union; ids the library does not
    know are dropped. No match at all falls back to the catch-all type.
    Order is type_id-sorted so composition is reproducible.
    """
    chosen: set[str] = set()
    for type_id in classified_type_ids:
        if type_id in library:
            chosen.add(type_id)
    q = query.lower()
    for type_id in library.type_ids():
        qt = library.get(type_id)
        if any(keyword in q for keyword in qt.routing_keywords):
            chosen.add(type_id)
    chosen.discard("GENERAL")
    if not chosen:
        chosen = {"GENERAL"}
    return [library.get(tid) for tid in sorted(chosen)]


def compose(types: list[QuestionType]) -> CompositeSchema:
    """Merge schemas field-by-field.

    The first occurrence of a field_id fixes its label and kind; later
    occurrences only add their origin and can upgrade the field to
    required. No field is ever dropped, so every source type's required
    fields survive into the composite.
    """
    if not types:
        raise ValueError("compose needs at least one question type")
    by_id: dict[str, ComposedField] = {}
    order: list[str] = []
    for qt in types:
        for spec in qt.required_fields:
            kept = by_id.get(spec.field_id)
            if kept is None:
                by_id[spec.field_id] = ComposedField(spec=spec, origins=[qt.type_id])
                order.append(spec.field_id)
                continue
            kept.origins.append(qt.type_id)
            if spec.required and not kept.spec.required:
                kept.spec = SchemaField(
                    field_id=kept.spec.field_id,
                    label=kept.spec.label,
                    value_kind=kept.spec.value_kind,
                    required=True,
                )
    return CompositeSchema(
        source_type_ids=[qt.type_id for qt in types],
        fields=[by_id[fid] for fid in order],
    )
