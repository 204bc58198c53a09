"""Gate decisions, the review gate, and refinement."""

import random

import pytest

from evidesk.corpus.chunking import Chunk
from evidesk.corpus.records import MoleculeEntry, MoleculeRegistry
from evidesk.corpus.store import ChunkStore
from evidesk.errors import ParseFailure
from evidesk.pipeline.gating import (
    GIVE_UP,
    PROCEED,
    REFINE,
    gate_decision,
    refine_or_proceed,
    review_gate,
    rewrite_for_refinement,
)
from evidesk.pipeline.planning import SubQuery
from evidesk.providers.base import RerankProvider, RerankVerdict
from evidesk.retrieval.candidates import Candidate


class TableReranker(RerankProvider):
    """Scores drawn from a marker token in the passage text."""

    def __init__(self, table):
        self.table = table

    def rerank(self, query, passage):
        for marker, unit in self.table.items():
            if marker in passage:
                return RerankVerdict(raw_score=0.0, unit_score=unit)
        return RerankVerdict(raw_score=-99.0, unit_score=0.0)


def make_store(texts):
    chunks = [
        Chunk(
            doc_id=f"doc{i}",
            section_path=("S",),
            start_word=0,
            end_word=len(text.split()),
            text=text,
        )
        for i, text in enumerate(texts)
    ]
    return ChunkStore([], chunks), [c.chunk_id for c in chunks]


def judge_llm(verdicts):
    """call_llm stub answering the judgment role from a list."""
    queue = list(verdicts)

    def call(role, prompt):
        assert role == "judge_relevance"
        if not queue:
            raise ParseFailure("unscripted")
        return queue.pop(0)

    return call


class TestGateDecision:
    def test_boundary_is_inclusive(self):
        assert gate_decision(0.7, "RELEVANT") is True
        assert gate_decision(0.7 - 1e-12, "RELEVANT") is False

    def test_judgment_must_be_relevant(self):
        assert gate_decision(0.99, "IRRELEVANT") is False
        assert gate_decision(0.99, None) is False

    def test_fuzzed_pairs_obey_the_conjunction(self):
        rng = random.Random(31)
        for _ in range(500):
            score = rng.choice([rng.uniform(0, 1), 0.7, 0.7 - 1e-9, 0.7 + 1e-9])
            judgment = rng.choice(["RELEVANT", "IRRELEVANT", None])
            expected = score >= 0.7 and judgment == "RELEVANT"
            assert gate_decision(score, judgment) is expected


class TestReviewGate:
    def test_below_threshold_skips_the_judge_entirely(self):
        store, ids = make_store(["lowmark text here"])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        cands = [Candidate(chunk_id=ids[0], scores={"bm25": 1.0}, retrievers={"bm25"})]

        def exploding(role, prompt):
            raise AssertionError("judge must not be called below the score bar")

        retained = review_gate(sub, cands, TableReranker({"lowmark": 0.69}), store, exploding)
        assert retained == []
        assert cands[0].retained is False
        assert cands[0].judgment is None
        assert "below threshold" in cands[0].verdict_reason

    def test_passing_score_and_relevant_judgment_retains(self):
        store, ids = make_store(["highmark text"])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        cands = [Candidate(chunk_id=ids[0], scores={}, retrievers={"bm25"})]
        retained = review_gate(
            sub, cands, TableReranker({"highmark": 0.9}), store, judge_llm(["RELEVANT"])
        )
        assert [c.chunk_id for c in retained] == [ids[0]]
        assert cands[0].retained is True
        assert cands[0].scores["rerank"] == 0.9
        assert cands[0].judgment == "RELEVANT"

    def test_exact_threshold_with_relevant_judgment_retains(self):
        store, ids = make_store(["edgemark text"])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        cands = [Candidate(chunk_id=ids[0])]
        retained = review_gate(
            sub, cands, TableReranker({"edgemark": 0.7}), store, judge_llm(["RELEVANT"])
        )
        assert len(retained) == 1

    def test_irrelevant_judgment_rejects_despite_high_score(self):
        store, ids = make_store(["highmark text"])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        cands = [Candidate(chunk_id=ids[0])]
        retained = review_gate(
            sub, cands, TableReranker({"highmark": 0.95}), store, judge_llm(["IRRELEVANT"])
        )
        assert retained == []
        assert cands[0].judgment == "IRRELEVANT"

    def test_unusable_judgment_counts_as_not_retained(self):
        store, ids = make_store(["highmark text"])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        cands = [Candidate(chunk_id=ids[0])]
        retained = review_gate(
            sub, cands, TableReranker({"highmark": 0.95}), store, judge_llm(["MAYBE SO"])
        )
        assert retained == []
        assert "judgment unavailable" in cands[0].verdict_reason

    def test_retained_preserves_input_order(self):
        store, ids = make_store(["highmark one", "highmark two", "highmark three"])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        cands = [Candidate(chunk_id=cid) for cid in ids]
        retained = review_gate(
            sub,
            cands,
            TableReranker({"highmark": 0.8}),
            store,
            judge_llm(["RELEVANT", "RELEVANT", "RELEVANT"]),
        )
        assert [c.chunk_id for c in retained] == ids


@pytest.fixture
def registry():
    return MoleculeRegistry([MoleculeEntry("RX-101", aliases=["veltrazine"])])


class TestRefinement:
    def test_evidence_in_hand_proceeds(self, registry):
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        action, refined = refine_or_proceed(sub, [Candidate(chunk_id="c")], registry, "RX-101")
        assert (action, refined) == (PROCEED, None)

    def test_empty_gate_refines_until_the_cap(self, registry):
        sub = SubQuery(sub_id="s", domain="clinical", text="dose in phase 2 during 2019")
        action, refined = refine_or_proceed(sub, [], registry, "RX-101", max_refinements=2)
        assert action == REFINE
        assert refined.attempt == 2
        assert refined.sub_id == sub.sub_id
        action, refined = refine_or_proceed(refined, [], registry, "RX-101", max_refinements=2)
        assert action == REFINE
        assert refined.attempt == 3
        action, last = refine_or_proceed(refined, [], registry, "RX-101", max_refinements=2)
        assert (action, last) == (GIVE_UP, None)

    def test_rewrite_drops_years_and_phase_tags(self, registry):
        out = rewrite_for_refinement(
            "highest dose in Phase II (MAD) studies during 2019", registry, "RX-101"
        )
        assert "2019" not in out
        assert "phase ii" not in out.lower()
        assert "(mad)" not in out.lower()

    def test_rewrite_appends_known_aliases(self, registry):
        out = rewrite_for_refinement("highest dose", registry, "RX-101")
        assert "veltrazine" in out

    def test_rewrite_without_registry_still_works(self):
        out = rewrite_for_refinement("dose in 2020", None, "")
        assert "2020" not in out
