"""Document records and the molecule registry."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from evidesk.errors import RegistryError
from evidesk.words import normalize

STUDY_STAGES = ("preclinical", "clinical", "strategic", "unknown")


@dataclass
class DocumentRecord:
    doc_id: str
    title: str
    body: str
    study_stage: str = "unknown"
    date: str = ""
    keywords: list[str] = field(default_factory=list)
    molecule_ids: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.study_stage not in STUDY_STAGES:
            raise ValueError(f"unknown study_stage: {self.study_stage!r}")

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "title": self.title,
            "body": self.body,
            "study_stage": self.study_stage,
            "date": self.date,
            "keywords": list(self.keywords),
            "molecule_ids": list(self.molecule_ids),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "DocumentRecord":
        return cls(
            doc_id=raw["doc_id"],
            title=raw.get("title", ""),
            body=raw.get("body", ""),
            study_stage=raw.get("study_stage", "unknown"),
            date=raw.get("date", ""),
            keywords=list(raw.get("keywords", [])),
            molecule_ids=list(raw.get("molecule_ids", [])),
        )


@dataclass
class MoleculeEntry:
    molecule_id: str
    aliases: list[str] = field(default_factory=list)

    def all_names(self) -> list[str]:
        return [self.molecule_id, *self.aliases]


class MoleculeRegistry:
    """Canonical molecule ids plus their aliases.

    Names must be unique across the whole registry, canonical ids included;
    an alias that collides with another molecule's name would make linking
    ambiguous, so registry construction refuses it.
    """

    def __init__(self, entries: list[MoleculeEntry]):
        if not entries:
            raise RegistryError("registry must contain at least one molecule")
        self.entries = list(entries)
        self._by_name: dict[str, str] = {}
        for entry in self.entries:
            for name in entry.all_names():
                key = normalize(name).casefold()
                if not key:
                    raise RegistryError(f"empty name on molecule {entry.molecule_id}")
                if key in self._by_name and self._by_name[key] != entry.molecule_id:
                    raise RegistryError(
                        f"name {name!r} maps to both {self._by_name[key]} and {entry.molecule_id}"
                    )
                self._by_name[key] = entry.molecule_id

    def __len__(self) -> int:
        return len(self.entries)

    def molecule_ids(self) -> list[str]:
        return [e.molecule_id for e in self.entries]

    def resolve(self, name: str) -> str | None:
        return self._by_name.get(normalize(name).casefold())

    def names_for(self, molecule_id: str) -> list[str]:
        for entry in self.entries:
            if entry.molecule_id == molecule_id:
                return entry.all_names()
        return []

    def aliases_for(self, molecule_id: str) -> list[str]:
        for entry in self.entries:
            if entry.molecule_id == molecule_id:
                return list(entry.aliases)
        return []

    @classmethod
    def from_json(cls, path: str | Path) -> "MoleculeRegistry":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        entries = [
            MoleculeEntry(molecule_id=e["molecule_id"], aliases=list(e.get("aliases", [])))
            for e in raw["molecules"]
        ]
        return cls(entries)

    def to_json(self, path: str | Path):
        payload = {
            "molecules": [
                {"molecule_id": e.molecule_id, "aliases": list(e.aliases)} for e in self.entries
            ]
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def read_corpus_jsonl(path: str | Path) -> list[DocumentRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(DocumentRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{line_no}: bad document record: {exc}") from exc
    return records


def write_corpus_jsonl(path: str | Path, records: list[DocumentRecord]):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict(), ensure_ascii=True) + "\n")
