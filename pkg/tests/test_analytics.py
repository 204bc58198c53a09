import random

import pytest

from evidesk.errors import DuplicateRecord, InvalidNoael, NoOverlap, UnitMismatch
from evidesk.evaluation.analytics import (
    NoaelPair,
    SpeciesOutcome,
    load_attrition,
    load_noael_pairs,
    load_species_outcomes,
    rsr,
    species_concordance,
    stratify_attrition,
)


def pair(maternal, embryo, m_unit="mg/kg", e_unit="mg/kg", **kw):
    return NoaelPair(
        molecule_id="RX-101",
        species="rat",
        maternal_noael=maternal,
        maternal_unit=m_unit,
        embryo_fetal_noael=embryo,
        embryo_fetal_unit=e_unit,
        **kw,
    )


class TestRsr:
    def test_embryo_more_sensitive_is_red(self):
        ratio, zone = rsr(pair(10.0, 5.0))
        assert ratio == pytest.approx(2.0)
        assert zone == "red"

    def test_equal_levels_is_boundary(self):
        ratio, zone = rsr(pair(7.5, 7.5))
        assert ratio == pytest.approx(1.0)
        assert zone == "boundary"

    def test_mother_more_sensitive_is_green(self):
        ratio, zone = rsr(pair(5.0, 10.0))
        assert ratio == pytest.approx(0.5)
        assert zone == "green"

    def test_just_above_one_is_red(self):
        _, zone = rsr(pair(1.0 + 1e-6, 1.0))
        assert zone == "red"

    def test_within_epsilon_is_boundary(self):
        _, zone = rsr(pair(1.0 + 1e-12, 1.0))
        assert zone == "boundary"

    def test_unit_mismatch_rejected(self):
        with pytest.raises(UnitMismatch):
            rsr(pair(10.0, 5.0, m_unit="mg/kg", e_unit="mg"))

    def test_unit_compare_ignores_case_and_spacing(self):
        _, zone = rsr(pair(10.0, 5.0, m_unit="MG/KG", e_unit=" mg/kg "))
        assert zone == "red"

    def test_empty_unit_rejected(self):
        with pytest.raises(UnitMismatch):
            rsr(pair(10.0, 5.0, m_unit="", e_unit=""))

    @pytest.mark.parametrize("maternal,embryo", [(0.0, 5.0), (5.0, 0.0), (-1.0, 5.0)])
    def test_non_positive_levels_rejected(self, maternal, embryo):
        with pytest.raises(InvalidNoael):
            rsr(pair(maternal, embryo))

    def test_zone_invariant_under_unit_rescaling(self):
        rng = random.Random(52)
        for _ in range(100):
            maternal = rng.uniform(0.1, 30.0)
            embryo = rng.uniform(0.1, 30.0)
            scale = rng.choice([0.001, 0.5, 1000.0])
            _, zone = rsr(pair(maternal, embryo))
            _, scaled_zone = rsr(pair(maternal * scale, embryo * scale, m_unit="ug", e_unit="ug"))
            assert zone == scaled_zone


class TestSpeciesConcordance:
    def outcomes(self, rat, rabbit):
        out = []
        for i, value in enumerate(rat):
            out.append(SpeciesOutcome(f"m{i}", "rat", value))
        for i, value in enumerate(rabbit):
            out.append(SpeciesOutcome(f"m{i}", "rabbit", value))
        return out

    def test_hand_counted_rate(self):
        data = self.outcomes(
            ["positive", "positive", "negative", "negative"],
            ["positive", "negative", "negative", "negative"],
        )
        assert species_concordance(data, "rat", "rabbit") == pytest.approx(0.75)

    def test_identical_vectors_agree_fully(self):
        data = self.outcomes(["positive", "negative"], ["positive", "negative"])
        assert species_concordance(data, "rat", "rabbit") == 1.0

    def test_missing_outcomes_leave_denominator(self):
        data = self.outcomes(
            ["positive", "positive", "missing"],
            ["positive", "missing", "negative"],
        )
        # only m0 has definite outcomes in both
        assert species_concordance(data, "rat", "rabbit") == 1.0

    def test_no_overlap_rejected(self):
        data = self.outcomes(["positive", "negative"], ["missing", "missing"])
        with pytest.raises(NoOverlap):
            species_concordance(data, "rat", "rabbit")

    def test_duplicate_species_record_rejected(self):
        data = [
            SpeciesOutcome("m0", "rat", "positive"),
            SpeciesOutcome("m0", "rat", "negative"),
            SpeciesOutcome("m0", "rabbit", "positive"),
        ]
        with pytest.raises(DuplicateRecord):
            species_concordance(data, "rat", "rabbit")

    def test_unknown_species_rejected(self):
        with pytest.raises(ValueError):
            SpeciesOutcome("m0", "hamster", "positive")
        with pytest.raises(ValueError):
            species_concordance([], "rat", "hamster")


class TestStratifyAttrition:
    def test_single_category_degenerate(self):
        shares = stratify_attrition([("m1", "strategic"), ("m2", "strategic")])
        assert len(shares) == 1
        assert shares[0].category == "strategic"
        assert shares[0].share == 1.0

    def test_quarter_share(self):
        records = [("m1", "strategic")] + [(f"n{i}", "preclinical safety") for i in range(3)]
        shares = {s.category: s.share for s in stratify_attrition(records)}
        assert shares["strategic"] == pytest.approx(0.25)

    def test_duplicate_molecule_rejected(self):
        with pytest.raises(DuplicateRecord):
            stratify_attrition([("m1", "a"), ("m1", "b")])

    def test_sorted_descending_with_name_ties(self):
        records = (
            [(f"a{i}", "alpha") for i in range(2)]
            + [(f"b{i}", "beta") for i in range(2)]
            + [(f"c{i}", "gamma") for i in range(4)]
        )
        shares = stratify_attrition(records)
        assert [s.category for s in shares] == ["gamma", "alpha", "beta"]

    def test_shares_sum_to_one(self):
        rng = random.Random(9)
        categories = ["clinical safety", "clinical efficacy", "strategic", "other"]
        for _ in range(50):
            n = rng.randint(1, 120)
            records = [(f"m{i}", rng.choice(categories)) for i in range(n)]
            total = sum(s.share for s in stratify_attrition(records))
            assert abs(total - 1.0) <= 1e-9

    def test_portfolio_fixture_share(self):
        # 21 stops out of 180 for clinical safety reasons, about 11.7 percent
        records = (
            [(f"cs{i}", "clinical safety") for i in range(21)]
            + [(f"ce{i}", "clinical efficacy") for i in range(32)]
            + [(f"st{i}", "strategic") for i in range(39)]
            + [(f"ps{i}", "preclinical safety") for i in range(41)]
            + [(f"ot{i}", "other") for i in range(47)]
        )
        assert len(records) == 180
        shares = {s.category: s.share for s in stratify_attrition(records)}
        assert shares["clinical safety"] == pytest.approx(0.117, abs=1e-3)


class TestCsvLoaders:
    def test_noael_round_trip(self, tmp_path):
        path = tmp_path / "noael.csv"
        path.write_text(
            "molecule_id,species,maternal_noael,maternal_unit,"
            "embryo_fetal_noael,embryo_fetal_unit,exposure_basis\n"
            "RX-101,rat,10,mg/kg,5,mg/kg,auc\n"
            "RX-205,rabbit,3,mg/kg,6,mg/kg,\n"
        )
        pairs = load_noael_pairs(path)
        assert len(pairs) == 2
        assert pairs[0].exposure_basis == "auc"
        assert pairs[1].exposure_basis == "dose"
        assert rsr(pairs[0])[1] == "red"

    def test_species_round_trip(self, tmp_path):
        path = tmp_path / "species.csv"
        path.write_text(
            "molecule_id,species,outcome\nRX-101,rat,positive\nRX-101,rabbit,negative\n"
        )
        outcomes = load_species_outcomes(path)
        assert len(outcomes) == 2
        assert outcomes[0].outcome == "positive"

    def test_attrition_round_trip(self, tmp_path):
        path = tmp_path / "attrition.csv"
        path.write_text("molecule_id,category\nm1,strategic\nm2,clinical safety\n")
        assert load_attrition(path) == [("m1", "strategic"), ("m2", "clinical safety")]

    def test_missing_column_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("molecule_id,species\nRX-101,rat\n")
        with pytest.raises(ValueError):
            load_species_outcomes(path)
