"""A synthetic research archive for end-to-end tests and demos.

Three invented programs at different stages: RX-101 (veltrazine) carries a
full preclinical-to-phase-2 record, RX-205 (morvantide) is paused after a
first study, and RX-309 (quellarix) was stopped before any human dosing.
Every number is made up. The prose is written so that the sentence holding
a key value shares vocabulary with the question asking for it, the way an
attentive archive actually reads.
"""

from __future__ import annotations

from dataclasses import dataclass

from evidesk.config import EngineConfig
from evidesk.corpus.chunking import chunk_document
from evidesk.corpus.linking import link_molecules
from evidesk.corpus.records import DocumentRecord, MoleculeEntry, MoleculeRegistry
from evidesk.corpus.store import ChunkStore
from evidesk.providers.stub import HashingEmbedder
from evidesk.retrieval.snapshot import build_indexes
from evidesk.taxonomy.library import default_library


def fixture_registry() -> MoleculeRegistry:
    return MoleculeRegistry(
        [
            MoleculeEntry("RX-101", aliases=["veltrazine", "VT-17"]),
            MoleculeEntry("RX-205", aliases=["morvantide"]),
            MoleculeEntry("RX-309", aliases=["quellarix"]),
        ]
    )


def _dog_study_tables() -> str:
    # individual animal rows, long enough that the chunker must split the
    # section into overlapping windows
    grades = {5: "minimal", 15: "moderate", 50: "marked"}
    rows = []
    for i in range(48):
        dose = (5, 15, 50)[i % 3]
        alt = 38 + 7 * ((i * 11) % 13)
        ast = 41 + 5 * ((i * 7) % 17)
        rows.append(
            f"Animal {i + 1:02d} in the {dose} mg/kg/day group of the RX-309 study "
            f"showed ALT {alt} U/L and AST {ast} U/L together with {grades[dose]} "
            f"centrilobular hepatocellular necrosis on microscopic examination."
        )
    return " ".join(rows)


def fixture_documents() -> list[DocumentRecord]:
    """Fresh record objects each call; ingestion mutates molecule links."""
    return [
        # RX-101: the complete program
        DocumentRecord(
            doc_id="rx101-rat-tox",
            title="RX-101 26-week rat toxicology study",
            body=(
                "# Summary\n"
                "Repeat oral dosing of RX-101 veltrazine in rats for 26 weeks produced "
                "no adverse findings below the high dose and the compound was well "
                "tolerated through the recovery phase of the preclinical study.\n"
                "# Findings\n"
                "The no observed adverse effect level NOAEL for RX-101 in the rat was "
                "50 mg/kg/day. At the 150 mg/kg/day high dose reversible reductions in "
                "red cell mass and mild marrow hypocellularity were recorded. No hepatic "
                "findings were seen at any dose of veltrazine."
            ),
            study_stage="preclinical",
            date="2019-03-11",
        ),
        DocumentRecord(
            doc_id="rx101-dog-cardio",
            title="RX-101 dog cardiovascular safety study",
            body=(
                "# Findings\n"
                "Telemetered dogs given single oral doses of RX-101 showed no QT "
                "prolongation and no adverse cardiovascular effects at any dose tested "
                "in this preclinical safety evaluation of veltrazine."
            ),
            study_stage="preclinical",
            date="2019-06-02",
        ),
        DocumentRecord(
            doc_id="rx101-sad",
            title="RX-101 phase 1 single ascending dose study",
            body=(
                "# Design\n"
                "This phase 1 single ascending dose study enrolled healthy volunteers "
                "to receive the oral compound veltrazine RX-101 or placebo. Twelve "
                "subjects per cohort were dosed in the clinical unit.\n"
                "# Dosing\n"
                "The first in human dose of RX-101 was 5 mg given by the oral route. "
                "Doses then escalated through 10 mg, 20 mg, and 40 mg. The highest dose "
                "of RX-101 administered in the phase 1 clinical study was 60 mg.\n"
                "# Safety\n"
                "Serious adverse events were observed for RX-101 at the 60 mg dose, with "
                "one episode of transient syncope in a fasted subject. All lower doses "
                "of veltrazine were well tolerated by the volunteers."
            ),
            study_stage="clinical",
            date="2020-02-14",
        ),
        DocumentRecord(
            doc_id="rx101-mad",
            title="RX-101 phase 1 multiple ascending dose study",
            body=(
                "# Dosing\n"
                "Cohorts were given 10 mg, 20 mg, or 40 mg of RX-101 once daily over "
                "two weeks. Veltrazine was administered by the oral route as tablets "
                "with breakfast in the clinical unit.\n"
                "# Safety\n"
                "Mild headache was the most common complaint on repeated dosing of "
                "RX-101. No serious adverse events occurred at any repeated dose level."
            ),
            study_stage="clinical",
            date="2020-08-30",
        ),
        DocumentRecord(
            doc_id="rx101-ph2",
            title="RX-101 phase 2 efficacy study",
            body=(
                "# Regimen\n"
                "Patients in the clinical study received 20 mg once daily for 28 days "
                "under the phase 2 dosing regimen for RX-101, with no new safety "
                "findings on the schedule.\n"
                "# Outcome\n"
                "The efficacious dose of RX-101 was 20 mg once daily. Responder rate "
                "reached 62 percent against 31 percent on placebo, so veltrazine met "
                "the primary endpoint of the study."
            ),
            study_stage="clinical",
            date="2021-05-19",
        ),
        DocumentRecord(
            doc_id="rx101-strategy",
            title="RX-101 portfolio review",
            body=(
                "# Decision\n"
                "The review board advanced RX-101 to a phase 2b program and named "
                "veltrazine a priority asset for the portfolio."
            ),
            study_stage="strategic",
            date="2022-01-27",
        ),
        # RX-205: paused after first-in-human work
        DocumentRecord(
            doc_id="rx205-rat-tox",
            title="RX-205 rat toxicology study",
            body=(
                "# Findings\n"
                "Morvantide RX-205 produced renal tubular degeneration at the high dose "
                "in the rat. The NOAEL for RX-205 was 10 mg/kg/day in this preclinical "
                "study."
            ),
            study_stage="preclinical",
            date="2018-09-04",
        ),
        DocumentRecord(
            doc_id="rx205-sad",
            title="RX-205 phase 1 single ascending dose study",
            body=(
                "# Dosing\n"
                "The first in human dose of RX-205 was 2 mg administered by the "
                "intravenous route. Escalation of morvantide stopped at 8 mg pending "
                "reformulation of the clinical supply."
            ),
            study_stage="clinical",
            date="2019-11-21",
        ),
        DocumentRecord(
            doc_id="rx205-strategy",
            title="RX-205 development hold memo",
            body=(
                "# Decision\n"
                "The RX-205 program was placed on hold while a new formulation of "
                "morvantide is developed. No further dosing is planned this year."
            ),
            study_stage="strategic",
            date="2020-07-08",
        ),
        # RX-309: stopped before the clinic
        DocumentRecord(
            doc_id="rx309-dog-tox",
            title="RX-309 4-week dog toxicology study",
            body=(
                "# Findings\n"
                "Quellarix RX-309 is hepatotoxic in the dog. Marked transaminase "
                "elevations and hepatocellular necrosis appeared at every dose level "
                "of the preclinical study, and no NOAEL could be established for "
                "RX-309.\n"
                "# Individual animal data\n" + _dog_study_tables()
            ),
            study_stage="preclinical",
            date="2017-04-18",
        ),
        DocumentRecord(
            doc_id="rx309-rat-tox",
            title="RX-309 rat toxicology study",
            body=(
                "# Findings\n"
                "RX-309 is hepatotoxic in the rat as well. Bile duct hyperplasia and "
                "single cell necrosis confirmed the quellarix liver signal seen in the "
                "dog during preclinical testing."
            ),
            study_stage="preclinical",
            date="2017-07-12",
        ),
        DocumentRecord(
            doc_id="rx309-discontinuation",
            title="RX-309 discontinuation memo",
            body=(
                "# Decision\n"
                "Development of RX-309 was discontinued after marked hepatocellular "
                "necrosis emerged in the preclinical dog and rat toxicology studies. "
                "The committee noted that no clinical dosing had begun and closed the "
                "quellarix program on safety grounds."
            ),
            study_stage="strategic",
            date="2018-02-09",
        ),
        # one document naming several molecules, so multi-assignment is real
        DocumentRecord(
            doc_id="portfolio-2022",
            title="Portfolio stage overview",
            body=(
                "# Program status\n"
                "RX-101 advanced into phase 2b on strong efficacy data. RX-205 remains "
                "on hold for reformulation. RX-309 was discontinued on preclinical "
                "safety grounds before reaching the clinic."
            ),
            study_stage="strategic",
            date="2022-03-02",
        ),
    ]


@dataclass(frozen=True)
class GoldenQuery:
    type_id: str
    query: str
    molecule_id: str


GOLDEN_QUERIES = (
    GoldenQuery("FIH_DOSE", "What was the first in human dose of veltrazine?", "RX-101"),
    GoldenQuery(
        "ROA",
        "What was the route of administration for veltrazine in the clinical studies?",
        "RX-101",
    ),
    GoldenQuery(
        "MAX_DOSE",
        "What was the highest dose of veltrazine administered in the clinical program?",
        "RX-101",
    ),
    GoldenQuery(
        "SAE_DOSE",
        "At what dose of veltrazine were serious adverse events observed?",
        "RX-101",
    ),
    GoldenQuery(
        "EFFICACIOUS_DOSE",
        "What was the efficacious dose of veltrazine in patients?",
        "RX-101",
    ),
    GoldenQuery(
        "REGIMEN",
        "What dosing regimen was used for veltrazine in the phase 2 study?",
        "RX-101",
    ),
    GoldenQuery(
        "SAFETY_MARGIN",
        "What is the margin of safety for veltrazine between preclinical and clinical findings?",
        "RX-101",
    ),
    GoldenQuery("DISCONTINUATION", "Why was quellarix discontinued?", "RX-309"),
    GoldenQuery(
        "TOXICITY_EVIDENCE",
        "Is quellarix hepatotoxic in the preclinical and clinical studies?",
        "RX-309",
    ),
)


def build_fixture_env(dimension: int = 64):
    """Chunk and index the fixture archive in memory.

    Returns the same tuple shape the pipeline runner consumes: store,
    indexes, registry, schema library, config.
    """
    registry = fixture_registry()
    docs = fixture_documents()
    chunks = []
    for record in docs:
        record.molecule_ids = sorted(link_molecules(record, registry))
        chunks.extend(chunk_document(record))
    store = ChunkStore(docs, chunks)
    config = EngineConfig()
    config.providers.dimension = dimension
    indexes = build_indexes(store, HashingEmbedder(dimension=dimension), config.retrieval)
    return store, indexes, registry, default_library(), config


def write_fixture_inputs(dir_path):
    """Materialize the archive as the corpus and registry files the CLI
    ingest verb consumes. Returns (corpus_path, molecules_path)."""
    from evidesk.corpus.records import write_corpus_jsonl

    dir_path.mkdir(parents=True, exist_ok=True)
    corpus_path = dir_path / "corpus.jsonl"
    molecules_path = dir_path / "molecules.json"
    write_corpus_jsonl(corpus_path, fixture_documents())
    fixture_registry().to_json(molecules_path)
    return corpus_path, molecules_path
