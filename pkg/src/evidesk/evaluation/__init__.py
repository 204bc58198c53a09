from evidesk.evaluation.adjudication import (
    BENCHMARK_QUERIES,
    LABELS,
    AdjudicationRecord,
    AdjudicationStore,
    tally,
)
from evidesk.evaluation.analytics import (
    AttritionShare,
    NoaelPair,
    SpeciesOutcome,
    rsr,
    species_concordance,
    stratify_attrition,
)
from evidesk.evaluation.metrics import (
    ConfusionCounts,
    MetricsReport,
    compute_metrics,
    f1_from,
    write_metrics_csv,
    write_metrics_json,
)
from evidesk.evaluation.rubrics import Rubric, RubricCheck, load_rubrics

__all__ = [
    "BENCHMARK_QUERIES",
    "LABELS",
    "AdjudicationRecord",
    "AdjudicationStore",
    "tally",
    "AttritionShare",
    "NoaelPair",
    "SpeciesOutcome",
    "rsr",
    "species_concordance",
    "stratify_attrition",
    "ConfusionCounts",
    "MetricsReport",
    "compute_metrics",
    "f1_from",
    "write_metrics_csv",
    "write_metrics_json",
    "Rubric",
    "RubricCheck",
    "load_rubrics",
]
