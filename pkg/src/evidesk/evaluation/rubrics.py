"""Adjudication rubrics: the per-query checklists behind the verdict labels.

Shipped as versioned package data so the review UI and the backend render
the same checklist from the same file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from evidesk.evaluation.adjudication import BENCHMARK_QUERIES, LABELS


@dataclass(frozen=True)
class RubricCheck:
    check_id: str
    text: str


@dataclass(frozen=True)
class Rubric:
    benchmark_query: str
    question_type: str
    title: str
    question_template: str
    positive_case: str
    negative_case: str
    checks: tuple[RubricCheck, ...]
    label_guide: dict

    def to_dict(self) -> dict:
        return {
            "benchmark_query": self.benchmark_query,
            "question_type": self.question_type,
            "title": self.title,
            "question_template": self.question_template,
            "positive_case": self.positive_case,
            "negative_case": self.negative_case,
            "checks": [{"check_id": c.check_id, "text": c.text} for c in self.checks],
            "label_guide": dict(self.label_guide),
        }


def _parse(raw: dict) -> dict[str, Rubric]:
    rubrics: dict[str, Rubric] = {}
    for item in raw["rubrics"]:
        rubric = Rubric(
            benchmark_query=item["benchmark_query"],
            question_type=item["question_type"],
            title=item["title"],
            question_template=item["question_template"],
            positive_case=item["positive_case"],
            negative_case=item["negative_case"],
            checks=tuple(RubricCheck(c["check_id"], c["text"]) for c in item["checks"]),
            label_guide=dict(item["label_guide"]),
        )
        if rubric.benchmark_query in rubrics:
            raise ValueError(f"duplicate rubric for {rubric.benchmark_query}")
        if rubric.benchmark_query not in BENCHMARK_QUERIES:
            raise ValueError(f"rubric for unknown query {rubric.benchmark_query}")
        if set(rubric.label_guide) != set(LABELS):
            raise ValueError(f"{rubric.benchmark_query}: label guide must cover {LABELS}")
        rubrics[rubric.benchmark_query] = rubric
    return rubrics


def load_rubrics() -> dict[str, Rubric]:
    source = resources.files("evidesk.evaluation").joinpath("data/rubrics.json")
    return _parse(json.loads(source.read_text(encoding="utf-8")))
