import csv
import json
import random

import pytest

from evidesk.errors import EmptyCounts
from evidesk.evaluation.metrics import (
    ConfusionCounts,
    compute_metrics,
    f1_from,
    format_metric,
    write_metrics_csv,
    write_metrics_json,
)

from tests.oracles import confusion_metrics_oracle


class TestConfusionCounts:
    def test_total(self):
        assert ConfusionCounts(tp=7, tn=8, fp=3, fn=2).total == 20

    @pytest.mark.parametrize("bad", [{"tp": -1}, {"fn": -3}])
    def test_negative_rejected(self, bad):
        kwargs = {"tp": 0, "tn": 0, "fp": 0, "fn": 0, **bad}
        with pytest.raises(ValueError):
            ConfusionCounts(**kwargs)

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            ConfusionCounts(tp=1.5, tn=0, fp=0, fn=0)


class TestComputeMetrics:
    def test_hand_computed_values(self):
        # 7/3/8/2 worked by hand: 15/20, 7/10, 7/9, 8/11, and their harmonic mean
        report = compute_metrics(ConfusionCounts(tp=7, tn=8, fp=3, fn=2))
        assert report.accuracy == pytest.approx(0.75, abs=1e-4)
        assert report.precision == pytest.approx(0.7, abs=1e-4)
        assert report.recall == pytest.approx(0.7778, abs=1e-4)
        assert report.specificity == pytest.approx(0.7273, abs=1e-4)
        assert report.f1 == pytest.approx(0.7368, abs=1e-4)

    def test_empty_counts_refused(self):
        with pytest.raises(EmptyCounts):
            compute_metrics(ConfusionCounts(tp=0, tn=0, fp=0, fn=0))

    def test_zero_denominators_become_none(self):
        # no positive predictions and no actual positives
        report = compute_metrics(ConfusionCounts(tp=0, tn=5, fp=0, fn=0))
        assert report.precision is None
        assert report.recall is None
        assert report.f1 is None
        assert report.accuracy == 1.0
        assert report.specificity == 1.0

    def test_agrees_with_oracle_on_random_counts(self):
        rng = random.Random(4821)
        for _ in range(300):
            tp, tn, fp, fn = (rng.randint(0, 12) for _ in range(4))
            if tp + tn + fp + fn == 0:
                continue
            expected = confusion_metrics_oracle(tp, tn, fp, fn)
            report = compute_metrics(ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn))
            for name, want in expected.items():
                got = getattr(report, name)
                if want is None:
                    assert got is None, name
                else:
                    assert got == pytest.approx(want, abs=1e-12), name

    def test_f1_identity_when_defined(self):
        rng = random.Random(77)
        for _ in range(200):
            tp, tn, fp, fn = (rng.randint(0, 9) for _ in range(4))
            if tp + tn + fp + fn == 0:
                continue
            report = compute_metrics(ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn))
            if report.f1 is not None:
                identity = 2 * report.precision * report.recall / (
                    report.precision + report.recall
                )
                assert abs(report.f1 - identity) <= 1e-12

    def test_accuracy_is_prevalence_weighted_mix(self):
        # accuracy = recall * P/(P+N) + specificity * N/(P+N)
        rng = random.Random(311)
        for _ in range(200):
            tp, tn, fp, fn = (rng.randint(0, 9) for _ in range(4))
            positives = tp + fn
            negatives = tn + fp
            if positives == 0 or negatives == 0:
                continue
            report = compute_metrics(ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn))
            total = positives + negatives
            mix = report.recall * positives / total + report.specificity * negatives / total
            assert report.accuracy == pytest.approx(mix, abs=1e-12)


class TestF1From:
    def test_published_style_pairs(self):
        assert f1_from(0.8712, 1.0) == pytest.approx(0.9311, abs=1e-3)
        assert f1_from(0.7142, 1.0) == pytest.approx(0.8333, abs=1e-3)

    def test_undefined_pass_through(self):
        assert f1_from(None, 1.0) is None
        assert f1_from(1.0, None) is None
        assert f1_from(0.0, 0.0) is None


class TestReports:
    def reports(self):
        return {
            "Q1": compute_metrics(ConfusionCounts(tp=7, tn=8, fp=3, fn=2)),
            "Q2": compute_metrics(ConfusionCounts(tp=0, tn=5, fp=0, fn=0)),
        }

    def test_json_round_trip(self, tmp_path):
        path = tmp_path / "metrics.json"
        write_metrics_json(self.reports(), path)
        data = json.loads(path.read_text())
        assert set(data) == {"Q1", "Q2"}
        assert data["Q1"]["counts"] == {"tp": 7, "tn": 8, "fp": 3, "fn": 2}
        assert data["Q1"]["accuracy"] == pytest.approx(0.75)
        assert data["Q2"]["precision"] is None

    def test_csv_formatting(self, tmp_path):
        path = tmp_path / "metrics.csv"
        write_metrics_csv(self.reports(), path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["query", "accuracy", "precision", "recall", "specificity", "f1"]
        assert rows[1] == ["Q1", "0.7500", "0.7000", "0.7778", "0.7273", "0.7368"]
        assert rows[2][0] == "Q2"
        assert rows[2][2] == "NA"

    def test_format_metric(self):
        assert format_metric(None) == "NA"
        assert format_metric(0.93114) == "0.9311"
