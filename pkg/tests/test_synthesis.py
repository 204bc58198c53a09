"""Research synthesis, context budgeting, and answer composition."""

import json

import pytest

from evidesk.corpus.chunking import Chunk
from evidesk.corpus.store import ChunkStore
from evidesk.errors import ParseFailure
from evidesk.pipeline.planning import Classification, SubQuery, build_plan
from evidesk.pipeline.synthesis import (
    NULL_DOMAIN_NOTE,
    Finding,
    canonical_json_bytes,
    parse_research_response,
    research,
    select_context,
    supervise,
)
from evidesk.retrieval.candidates import Candidate


def make_store(word_counts):
    chunks = [
        Chunk(
            doc_id=f"doc{i}",
            section_path=("S",),
            start_word=0,
            end_word=n,
            text=" ".join(f"w{j}" for j in range(n)),
        )
        for i, n in enumerate(word_counts)
    ]
    return ChunkStore([], chunks), [c.chunk_id for c in chunks]


def plan_for(domains):
    return build_plan(
        "q1",
        "query",
        "",
        Classification(tuple(domains), ("GENERAL",), "rules"),
        None,
    )


class TestSelectContext:
    def test_budget_respected_in_gate_order(self):
        store, ids = make_store([400, 400, 400])
        retained = [Candidate(chunk_id=cid) for cid in ids]
        picked = select_context(retained, store, budget_words=900)
        assert [c.chunk_id for c in picked] == ids[:2]

    def test_a_later_smaller_chunk_can_still_fit(self):
        store, ids = make_store([500, 600, 80])
        retained = [Candidate(chunk_id=cid) for cid in ids]
        picked = select_context(retained, store, budget_words=600)
        assert [c.chunk_id for c in picked] == [ids[0], ids[2]]

    def test_first_chunk_always_admitted(self):
        store, ids = make_store([800])
        picked = select_context([Candidate(chunk_id=ids[0])], store, budget_words=100)
        assert [c.chunk_id for c in picked] == ids


class TestParseResearchResponse:
    def test_valid_response_parses(self):
        raw = json.dumps(
            {"summary": "found it", "evidence": [{"chunk_id": "c1", "quote": "the words"}]}
        )
        summary, evidence = parse_research_response(raw, {"c1"})
        assert summary == "found it"
        assert evidence == [{"chunk_id": "c1", "quote": "the words"}]

    @pytest.mark.parametrize(
        "payload",
        [
            {"summary": "", "evidence": [{"chunk_id": "c1", "quote": "q"}]},
            {"summary": "s", "evidence": []},
            {"summary": "s"},
            {"evidence": [{"chunk_id": "c1", "quote": "q"}]},
            {"summary": "s", "evidence": [{"quote": "q"}]},
            "just text",
        ],
    )
    def test_malformed_shapes_rejected(self, payload):
        with pytest.raises(ParseFailure):
            parse_research_response(json.dumps(payload), {"c1"})

    def test_citing_outside_the_allowed_set_rejected(self):
        raw = json.dumps(
            {"summary": "s", "evidence": [{"chunk_id": "forged", "quote": "q"}]}
        )
        with pytest.raises(ParseFailure):
            parse_research_response(raw, {"c1", "c2"})


class TestResearch:
    def test_no_retained_evidence_is_null(self):
        store, _ = make_store([10])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        finding = research(sub, [], store, lambda role, p: "unused")
        assert finding.is_null is True
        assert finding.reason == "no retained evidence"

    def test_bad_model_output_degrades_to_null(self):
        store, ids = make_store([10])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")
        finding = research(
            sub, [Candidate(chunk_id=ids[0])], store, lambda role, p: "not json"
        )
        assert finding.is_null is True
        assert "unavailable" in finding.reason

    def test_good_response_becomes_finding(self):
        store, ids = make_store([10])
        sub = SubQuery(sub_id="s", domain="clinical", text="q")

        def call(role, prompt):
            assert role == "research"
            assert ids[0] in prompt
            return json.dumps(
                {"summary": "answer", "evidence": [{"chunk_id": ids[0], "quote": "w0 w1"}]}
            )

        finding = research(sub, [Candidate(chunk_id=ids[0])], store, call)
        assert finding.is_null is False
        assert finding.summary == "answer"
        assert finding.evidence[0]["chunk_id"] == ids[0]


class TestSupervise:
    def test_sections_keep_fixed_domain_order(self):
        plan = plan_for(["preclinical", "clinical", "strategic"])
        findings = [
            Finding(sub_id="q1/strategic", domain="strategic", is_null=False, summary="S"),
            Finding(sub_id="q1/preclinical", domain="preclinical", is_null=False, summary="P"),
            Finding(sub_id="q1/clinical", domain="clinical", is_null=False, summary="C"),
        ]
        answer = supervise(plan, findings)
        assert [s.domain for s in answer.sections] == ["preclinical", "clinical", "strategic"]
        assert answer.null_domain_notes == []

    def test_null_domains_get_the_note_verbatim(self):
        plan = plan_for(["preclinical", "clinical"])
        findings = [
            Finding(sub_id="q1/preclinical", domain="preclinical", is_null=False, summary="P"),
            Finding(sub_id="q1/clinical", domain="clinical", is_null=True, reason="nothing"),
        ]
        answer = supervise(plan, findings)
        assert [s.domain for s in answer.sections] == ["preclinical"]
        assert answer.null_domain_notes == [
            {"domain": "clinical", "note": NULL_DOMAIN_NOTE}
        ]

    def test_every_requested_domain_appears_exactly_once(self):
        plan = plan_for(["preclinical", "clinical", "strategic"])
        findings = [
            Finding(sub_id="q1/preclinical", domain="preclinical", is_null=True),
            Finding(sub_id="q1/clinical", domain="clinical", is_null=False, summary="C"),
            Finding(sub_id="q1/strategic", domain="strategic", is_null=True),
        ]
        answer = supervise(plan, findings)
        section_domains = {s.domain for s in answer.sections}
        note_domains = {n["domain"] for n in answer.null_domain_notes}
        assert section_domains | note_domains == {"preclinical", "clinical", "strategic"}
        assert section_domains & note_domains == set()

    def test_narrative_concatenates_summaries_in_order(self):
        plan = plan_for(["clinical"])
        findings = [
            Finding(sub_id="a", domain="clinical", is_null=False, summary="first"),
            Finding(sub_id="b", domain="clinical", is_null=False, summary="second"),
        ]
        answer = supervise(plan, findings)
        assert answer.sections[0].narrative == "first\n\nsecond"

    def test_composition_is_reproducible_bytes(self):
        plan = plan_for(["clinical"])
        findings = [
            Finding(
                sub_id="a",
                domain="clinical",
                is_null=False,
                summary="s",
                evidence=[{"chunk_id": "c1", "quote": "q"}],
            )
        ]
        one = canonical_json_bytes(supervise(plan, findings).to_dict())
        two = canonical_json_bytes(supervise(plan, findings).to_dict())
        assert one == two

    def test_cited_chunk_ids_collects_evidence(self):
        plan = plan_for(["clinical"])
        findings = [
            Finding(
                sub_id="a",
                domain="clinical",
                is_null=False,
                summary="s",
                evidence=[{"chunk_id": "c1", "quote": "q"}, {"chunk_id": "c2", "quote": "r"}],
            )
        ]
        assert supervise(plan, findings).cited_chunk_ids() == {"c1", "c2"}
