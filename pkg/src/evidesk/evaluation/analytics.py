"""Portfolio analytics: safety ratios, cross-species agreement, attrition."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from evidesk.errors import DuplicateRecord, InvalidNoael, NoOverlap, UnitMismatch

ZONE_RED = "red"
ZONE_BOUNDARY = "boundary"
ZONE_GREEN = "green"

EXPOSURE_BASES = ("dose", "cmax", "auc")
SPECIES = ("mouse", "rat", "rabbit", "cynomolgus")
OUTCOMES = ("positive", "negative", "missing")

# ratios within this band of 1.0 are classified as boundary, not red
BOUNDARY_EPS = 1e-9


@dataclass(frozen=True)
class NoaelPair:
    molecule_id: str
    species: str
    maternal_noael: float
    maternal_unit: str
    embryo_fetal_noael: float
    embryo_fetal_unit: str
    exposure_basis: str = "dose"

    def __post_init__(self):
        if self.exposure_basis not in EXPOSURE_BASES:
            raise ValueError(f"exposure_basis must be one of {EXPOSURE_BASES}")


def rsr(pair: NoaelPair) -> tuple[float, str]:
    """Maternal over embryo-fetal no-adverse-effect level.

    A ratio above 1 means the embryo showed harm at doses the mother
    tolerated, the pattern the red zone flags. The boundary case is decided
    first inside a fixed epsilon so equal inputs never land in a zone by
    floating-point accident.
    """
    maternal_unit = pair.maternal_unit.strip().casefold()
    embryo_unit = pair.embryo_fetal_unit.strip().casefold()
    if not maternal_unit or maternal_unit != embryo_unit:
        raise UnitMismatch(
            f"{pair.molecule_id}: cannot divide {pair.maternal_unit!r} "
            f"by {pair.embryo_fetal_unit!r}"
        )
    if pair.maternal_noael <= 0 or pair.embryo_fetal_noael <= 0:
        raise InvalidNoael(
            f"{pair.molecule_id}: levels must be positive, got "
            f"{pair.maternal_noael} and {pair.embryo_fetal_noael}"
        )
    ratio = pair.maternal_noael / pair.embryo_fetal_noael
    if abs(ratio - 1.0) <= BOUNDARY_EPS:
        return ratio, ZONE_BOUNDARY
    return ratio, ZONE_RED if ratio > 1.0 else ZONE_GREEN


@dataclass(frozen=True)
class SpeciesOutcome:
    molecule_id: str
    species: str
    outcome: str

    def __post_init__(self):
        if self.species not in SPECIES:
            raise ValueError(f"species must be one of {SPECIES}, got {self.species!r}")
        if self.outcome not in OUTCOMES:
            raise ValueError(f"outcome must be one of {OUTCOMES}, got {self.outcome!r}")


def species_concordance(outcomes: list[SpeciesOutcome], a: str, b: str) -> float:
    """Agreement rate between two species over molecules tested in both.

    Missing outcomes drop out of the denominator; a molecule counts only
    when both species have a definite result.
    """
    if a not in SPECIES or b not in SPECIES:
        raise ValueError(f"species must be one of {SPECIES}")
    by_species: dict[str, dict[str, str]] = {a: {}, b: {}}
    for record in outcomes:
        if record.species not in (a, b):
            continue
        bucket = by_species[record.species]
        if record.molecule_id in bucket:
            raise DuplicateRecord(
                f"multiple outcomes for ({record.molecule_id}, {record.species})"
            )
        bucket[record.molecule_id] = record.outcome

    both = [
        molecule
        for molecule, outcome in by_species[a].items()
        if outcome != "missing" and by_species[b].get(molecule, "missing") != "missing"
    ]
    if not both:
        raise NoOverlap(f"no molecule has definite outcomes in both {a} and {b}")
    agreements = sum(1 for m in both if by_species[a][m] == by_species[b][m])
    return agreements / len(both)


@dataclass(frozen=True)
class AttritionShare:
    category: str
    count: int
    share: float

    def to_dict(self) -> dict:
        return {"category": self.category, "count": self.count, "share": self.share}


def stratify_attrition(records: list[tuple[str, str]]) -> list[AttritionShare]:
    """Split a portfolio into stop-reason categories.

    records are (molecule_id, category) pairs, one per molecule. Shares are
    count/total so they sum to 1 up to float rounding; output is sorted by
    descending share, ties by category name.
    """
    seen: set[str] = set()
    counts: dict[str, int] = {}
    for molecule_id, category in records:
        if molecule_id in seen:
            raise DuplicateRecord(f"molecule {molecule_id} categorized twice")
        seen.add(molecule_id)
        counts[category] = counts.get(category, 0) + 1
    total = len(seen)
    if total == 0:
        return []
    shares = [
        AttritionShare(category=c, count=n, share=n / total) for c, n in counts.items()
    ]
    shares.sort(key=lambda s: (-s.share, s.category))
    return shares


def _require_columns(fieldnames, required, path):
    missing = [c for c in required if c not in (fieldnames or [])]
    if missing:
        raise ValueError(f"{path} is missing columns {missing}")


def load_noael_pairs(path: str | Path) -> list[NoaelPair]:
    required = (
        "molecule_id",
        "species",
        "maternal_noael",
        "maternal_unit",
        "embryo_fetal_noael",
        "embryo_fetal_unit",
    )
    pairs = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        _require_columns(reader.fieldnames, required, path)
        for row in reader:
            pairs.append(
                NoaelPair(
                    molecule_id=row["molecule_id"],
                    species=row["species"],
                    maternal_noael=float(row["maternal_noael"]),
                    maternal_unit=row["maternal_unit"],
                    embryo_fetal_noael=float(row["embryo_fetal_noael"]),
                    embryo_fetal_unit=row["embryo_fetal_unit"],
                    exposure_basis=row.get("exposure_basis") or "dose",
                )
            )
    return pairs


def load_species_outcomes(path: str | Path) -> list[SpeciesOutcome]:
    required = ("molecule_id", "species", "outcome")
    outcomes = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        _require_columns(reader.fieldnames, required, path)
        for row in reader:
            outcomes.append(
                SpeciesOutcome(
                    molecule_id=row["molecule_id"],
                    species=row["species"],
                    outcome=row["outcome"],
                )
            )
    return outcomes


def load_attrition(path: str | Path) -> list[tuple[str, str]]:
    required = ("molecule_id", "category")
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        _require_columns(reader.fieldnames, required, path)
        for row in reader:
            records.append((row["molecule_id"], row["category"]))
    return records
