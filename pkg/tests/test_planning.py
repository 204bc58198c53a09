"""Classification rules, model fallback, and plan building."""

import json

import pytest

from evidesk.corpus.records import MoleculeEntry, MoleculeRegistry
from evidesk.errors import ParseFailure, ProviderUnavailable
from evidesk.pipeline.planning import (
    build_plan,
    classify,
    parse_classify_response,
    resolve_molecule_names,
    rule_classify,
)
from evidesk.providers.base import LlmProvider

KNOWN_TYPES = [
    "DISCONTINUATION",
    "EFFICACIOUS_DOSE",
    "FIH_DOSE",
    "GENERAL",
    "MAX_DOSE",
    "REGIMEN",
    "ROA",
    "SAE_DOSE",
    "SAFETY_MARGIN",
    "TOXICITY_EVIDENCE",
]


class StaticLlm(LlmProvider):
    def __init__(self, response=None, error=None):
        self.response = response
        self.error = error

    def complete(self, role, prompt):
        if self.error:
            raise self.error
        return self.response


class TestRuleClassify:
    @pytest.mark.parametrize(
        "query,domains,types",
        [
            (
                "What was the first in human dose of RX-101?",
                ("clinical",),
                ("FIH_DOSE",),
            ),
            (
                "What was the route of administration of RX-101 in clinical studies?",
                ("clinical",),
                ("ROA",),
            ),
            (
                "What was the highest clinical dose of RX-101 administered in phase 1 studies?",
                ("clinical",),
                ("MAX_DOSE",),
            ),
            (
                "What was the highest clinical dose at which there were severe adverse events?",
                ("clinical",),
                ("SAE_DOSE",),
            ),
            (
                "At which dose did RX-101 demonstrate clinical efficacy?",
                ("clinical",),
                ("EFFICACIOUS_DOSE",),
            ),
            (
                "What was the dosing regimen of RX-101 in the phase 1 study?",
                ("clinical",),
                ("REGIMEN",),
            ),
            (
                "What is the margin of safety for RX-101?",
                ("preclinical", "clinical"),
                ("SAFETY_MARGIN",),
            ),
            (
                "Why was RX-309 discontinued and in which development phase?",
                ("strategic",),
                ("DISCONTINUATION",),
            ),
            (
                "Is RX-309 hematotoxic in pre-clinical or clinical studies?",
                ("preclinical", "clinical"),
                ("TOXICITY_EVIDENCE",),
            ),
        ],
    )
    def test_benchmark_archetypes_route_as_expected(self, query, domains, types):
        result = rule_classify(query)
        assert result.domains == domains
        assert result.question_types == types
        assert result.source == "rules"

    def test_unmatched_query_goes_everywhere_as_general(self):
        result = rule_classify("Tell me about the program history.")
        assert result.domains == ("preclinical", "clinical", "strategic")
        assert result.question_types == ("GENERAL",)

    def test_composite_query_unions_types(self):
        result = rule_classify(
            "What was the first in human dose and why was the compound discontinued?"
        )
        assert result.question_types == ("DISCONTINUATION", "FIH_DOSE")
        assert result.domains == ("clinical", "strategic")

    def test_toxicity_without_phase_words_covers_both_evidence_domains(self):
        result = rule_classify("Is the compound hepatotoxic?")
        assert result.domains == ("preclinical", "clinical")


class TestClassify:
    def test_model_response_wins_when_valid(self):
        llm = StaticLlm(json.dumps({"domains": ["clinical"], "question_types": ["FIH_DOSE"]}))
        result = classify("anything", llm, KNOWN_TYPES)
        assert result.source == "llm"
        assert result.domains == ("clinical",)
        assert result.question_types == ("FIH_DOSE",)

    def test_malformed_response_falls_back_to_rules(self):
        llm = StaticLlm("not json at all")
        result = classify("What was the first in human dose?", llm, KNOWN_TYPES)
        assert result.source == "rules"
        assert result.question_types == ("FIH_DOSE",)

    def test_provider_outage_falls_back_to_rules(self):
        llm = StaticLlm(error=ProviderUnavailable("down"))
        result = classify("Why was it discontinued?", llm, KNOWN_TYPES)
        assert result.source == "rules"
        assert result.question_types == ("DISCONTINUATION",)

    @pytest.mark.parametrize(
        "payload",
        [
            {"domains": [], "question_types": []},
            {"domains": ["galactic"], "question_types": []},
            {"domains": ["clinical"], "question_types": ["UNKNOWN_TYPE"]},
            {"domains": ["clinical"]},
            ["clinical"],
        ],
    )
    def test_bad_payload_shapes_are_rejected(self, payload):
        with pytest.raises(ParseFailure):
            parse_classify_response(json.dumps(payload), KNOWN_TYPES)

    def test_domains_come_back_in_fixed_order(self):
        response = json.dumps(
            {"domains": ["strategic", "preclinical", "clinical"], "question_types": []}
        )
        domains, _ = parse_classify_response(response, KNOWN_TYPES)
        assert domains == ("preclinical", "clinical", "strategic")


@pytest.fixture
def registry():
    return MoleculeRegistry(
        [
            MoleculeEntry("RX-101", aliases=["veltrazine", "VT-17"]),
            MoleculeEntry("RX-309", aliases=["quellarix"]),
        ]
    )


class TestResolveAndPlan:
    def test_aliases_resolve_to_canonical_ids(self, registry):
        out = resolve_molecule_names("Was Veltrazine tolerated with VT-17 labels?", registry)
        assert out == "Was RX-101 tolerated with RX-101 labels?"

    def test_unknown_names_left_alone(self, registry):
        assert resolve_molecule_names("about XZ-9", registry) == "about XZ-9"

    def test_plan_has_one_sub_query_per_domain_in_order(self, registry):
        from evidesk.pipeline.planning import Classification

        plan = build_plan(
            "q1",
            "Is quellarix hematotoxic?",
            "RX-309",
            Classification(("preclinical", "clinical"), ("TOXICITY_EVIDENCE",), "rules"),
            registry,
        )
        assert [s.domain for s in plan.sub_queries] == ["preclinical", "clinical"]
        assert [s.sub_id for s in plan.sub_queries] == ["q1/preclinical", "q1/clinical"]
        assert all(s.attempt == 1 for s in plan.sub_queries)

    def test_molecule_id_lands_in_every_sub_query_text(self, registry):
        from evidesk.pipeline.planning import Classification

        plan = build_plan(
            "q2",
            "Is the lead compound hematotoxic?",
            "RX-309",
            Classification(("preclinical", "clinical"), ("TOXICITY_EVIDENCE",), "rules"),
            registry,
        )
        for sub in plan.sub_queries:
            assert "RX-309" in sub.text

    def test_alias_in_query_resolved_in_sub_text_without_duplication(self, registry):
        from evidesk.pipeline.planning import Classification

        plan = build_plan(
            "q3",
            "Is quellarix hematotoxic?",
            "RX-309",
            Classification(("preclinical",), ("TOXICITY_EVIDENCE",), "rules"),
            registry,
        )
        text = plan.sub_queries[0].text
        assert "quellarix" not in text.lower() or "RX-309" in text
        assert text.count("RX-309") == 1

    def test_scope_marker_distinguishes_domains(self, registry):
        from evidesk.pipeline.planning import Classification

        plan = build_plan(
            "q4",
            "margin of safety?",
            "RX-101",
            Classification(("preclinical", "clinical"), ("SAFETY_MARGIN",), "rules"),
            registry,
        )
        texts = [s.text for s in plan.sub_queries]
        assert len(set(texts)) == 2
