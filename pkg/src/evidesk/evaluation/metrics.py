"""Confusion-matrix metrics over adjudicated answers.

A metric whose denominator is zero is reported as None rather than raised:
degenerate slices happen with small adjudication sets and must not take the
whole report down. Only an entirely empty count set is an error.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from evidesk.errors import EmptyCounts

METRIC_NAMES = ("accuracy", "precision", "recall", "specificity", "f1")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "tn", "fp", "fn"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def to_dict(self) -> dict:
        return {"tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn}


def _ratio(numerator: int, denominator: int) -> float | None:
    if denominator == 0:
        return None
    return numerator / denominator


def f1_from(precision: float | None, recall: float | None) -> float | None:
    """Harmonic mean; undefined when either input is, or both are zero."""
    if precision is None or recall is None:
        return None
    if precision + recall == 0:
        return None
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class MetricsReport:
    counts: ConfusionCounts
    accuracy: float | None
    precision: float | None
    recall: float | None
    specificity: float | None
    f1: float | None

    def to_dict(self) -> dict:
        out: dict = {"counts": self.counts.to_dict()}
        for name in METRIC_NAMES:
            out[name] = getattr(self, name)
        return out


def compute_metrics(counts: ConfusionCounts) -> MetricsReport:
    if counts.total == 0:
        raise EmptyCounts("cannot compute metrics over zero adjudications")
    precision = _ratio(counts.tp, counts.tp + counts.fp)
    recall = _ratio(counts.tp, counts.tp + counts.fn)
    return MetricsReport(
        counts=counts,
        accuracy=_ratio(counts.tp + counts.tn, counts.total),
        precision=precision,
        recall=recall,
        specificity=_ratio(counts.tn, counts.tn + counts.fp),
        f1=f1_from(precision, recall),
    )


def format_metric(value: float | None) -> str:
    # 4 decimals to match the report tables; NA marks an undefined slice
    return "NA" if value is None else f"{value:.4f}"


def write_metrics_json(reports: dict[str, MetricsReport], path: str | Path):
    payload = {query: reports[query].to_dict() for query in sorted(reports)}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_metrics_csv(reports: dict[str, MetricsReport], path: str | Path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("query",) + tuple(METRIC_NAMES))
        for query in sorted(reports):
            report = reports[query]
            writer.writerow(
                [query] + [format_metric(getattr(report, name)) for name in METRIC_NAMES]
            )
