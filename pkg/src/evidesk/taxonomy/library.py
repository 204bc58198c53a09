"""Versioned question-type library with typed answer schemas."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

VALUE_KINDS = ("text", "quantity", "category", "flag", "evidence_list")


@dataclass(frozen=True)
class SchemaField:
    field_id: str
    label: str
    value_kind: str
    required: bool

    def __post_init__(self):
        if self.value_kind not in VALUE_KINDS:
            raise ValueError(f"unknown value_kind: {self.value_kind}")

    def to_dict(self) -> dict:
        return {
            "field_id": self.field_id,
            "label": self.label,
            "value_kind": self.value_kind,
            "required": self.required,
        }


@dataclass
class QuestionType:
    type_id: str
    description: str
    domains: tuple[str, ...]
    routing_keywords: tuple[str, ...]
    required_fields: list[SchemaField] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "type_id": self.type_id,
            "description": self.description,
            "domains": list(self.domains),
            "routing_keywords": list(self.routing_keywords),
            "required_fields": [f.to_dict() for f in self.required_fields],
        }


class SchemaLibrary:
    def __init__(self, version: int, question_types: list[QuestionType]):
        self.version = version
        self.types: dict[str, QuestionType] = {}
        for qt in question_types:
            if qt.type_id in self.types:
                raise ValueError(f"duplicate question type {qt.type_id}")
            self.types[qt.type_id] = qt

    def __contains__(self, type_id: str) -> bool:
        return type_id in self.types

    def get(self, type_id: str) -> QuestionType:
        return self.types[type_id]

    def type_ids(self) -> list[str]:
        return sorted(self.types)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "question_types": [self.types[tid].to_dict() for tid in sorted(self.types)],
        }

    def save(self, path: str | Path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True, ensure_ascii=True)
            fh.write("\n")

    @classmethod
    def from_dict(cls, raw: dict) -> "SchemaLibrary":
        types = []
        for item in raw["question_types"]:
            types.append(
                QuestionType(
                    type_id=item["type_id"],
                    description=item.get("description", ""),
                    domains=tuple(item.get("domains", [])),
                    routing_keywords=tuple(item.get("routing_keywords", [])),
                    required_fields=[
                        SchemaField(
                            field_id=f["field_id"],
                            label=f["label"],
                            value_kind=f["value_kind"],
                            required=bool(f["required"]),
                        )
                        for f in item["required_fields"]
                    ],
                )
            )
        return cls(version=int(raw["version"]), question_types=types)

    @classmethod
    def load(cls, path: str | Path) -> "SchemaLibrary":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def default_library() -> SchemaLibrary:
    data = resources.files("evidesk.taxonomy").joinpath("data/question_types.json")
    return SchemaLibrary.from_dict(json.loads(data.read_text(encoding="utf-8")))
