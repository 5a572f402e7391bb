"""
Tests for classification metrics and result reports.
"""

import csv
import io
import json

import numpy as np
import pytest

from apps.core.exceptions import ShapeError
from apps.experiments.services.metrics import accuracy, class_recall, per_class_recall
from apps.experiments.services.reports import (
    AVERAGE_ROW,
    ExperimentReport,
    ResultTable,
    TaskResult,
    mean_std,
)


class TestAccuracy:
    def test_identical_labels(self):
        assert accuracy([0, 1, 2, 1], [0, 1, 2, 1]) == 1.0

    def test_disjoint_labels(self):
        assert accuracy([1, 2, 0], [0, 1, 2]) == 0.0

    def test_partial_match(self):
        assert accuracy([0, 1, 2], [0, 1, 0]) == pytest.approx(2 / 3)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            accuracy([0, 1], [0, 1, 2])

    def test_empty(self):
        with pytest.raises(ShapeError):
            accuracy([], [])


class TestClassRecall:
    def test_recall_of_one_class(self):
        truth = [0, 0, 0, 0, 1, 1]
        predicted = [0, 1, 0, 1, 1, 1]
        assert class_recall(predicted, truth, 0) == pytest.approx(0.5)
        assert class_recall(predicted, truth, 1) == pytest.approx(1.0)

    def test_absent_class_is_zero(self):
        assert class_recall([0, 1], [0, 1], 2) == 0.0

    def test_per_class_covers_classes_in_truth(self):
        recall = per_class_recall([0, 2, 2, 1], [0, 2, 1, 1])
        assert recall == {0: 1.0, 1: 0.5, 2: 1.0}


def _result(task, method, seed, score):
    source, target = task.split("→")
    return TaskResult(
        task=task, source=source, target=target, method=method, seed=seed,
        fraction=0.1, accuracy=score, fit_seconds=1.0, predict_seconds=0.5,
        labeled_count=3, unlabeled_count=27, class_recall={0: score},
    )


@pytest.fixture
def report():
    results = [
        _result("A→B", "dabls", 0, 0.8),
        _result("A→B", "bls_source_only", 0, 0.6),
        _result("A→B", "dabls", 1, 0.6),
        _result("A→B", "bls_source_only", 1, 0.6),
        _result("B→A", "dabls", 0, 1.0),
        _result("B→A", "bls_source_only", 0, 0.5),
        _result("B→A", "dabls", 1, 1.0),
        _result("B→A", "bls_source_only", 1, 0.7),
    ]
    return ExperimentReport(results=results, config={"fraction": 0.1})


class TestMeanStd:
    def test_population_std(self):
        mean, std = mean_std([1.0, 3.0])
        assert mean == 2.0
        assert std == 1.0

    def test_empty_is_nan(self):
        mean, std = mean_std([])
        assert np.isnan(mean) and np.isnan(std)


class TestExperimentReport:
    def test_tasks_and_methods_in_first_seen_order(self, report):
        assert report.tasks() == ["A→B", "B→A"]
        assert report.methods() == ["dabls", "bls_source_only"]

    def test_task_summary(self, report):
        row = report.task_summary()[0]
        assert row["task"] == "A→B"
        assert row["method"] == "dabls"
        assert row["runs"] == 2
        assert row["accuracy"] == pytest.approx(0.7)
        assert row["accuracy_std"] == pytest.approx(0.1)

    def test_averages_are_means_of_task_means(self, report):
        averages = report.averages()
        assert averages["dabls"]["accuracy"] == pytest.approx((0.7 + 1.0) / 2, abs=1e-12)
        assert averages["bls_source_only"]["accuracy"] == pytest.approx((0.6 + 0.6) / 2, abs=1e-12)
        assert averages["dabls"]["tasks"] == 2

    def test_table_ends_with_average_row(self, report):
        table = report.table()
        assert table.columns[0] == "task"
        assert "dabls_accuracy" in table.columns
        assert [row["task"] for row in table.rows] == ["A→B", "B→A", AVERAGE_ROW]
        assert table.column("task") == ["A→B", "B→A"]

    def test_csv(self, report):
        rows = list(csv.DictReader(io.StringIO(report.to_csv())))
        assert len(rows) == 3
        assert rows[-1]["task"] == AVERAGE_ROW
        assert float(rows[0]["dabls_accuracy"]) == pytest.approx(0.7)

    def test_json(self, report):
        payload = json.loads(report.to_json())
        assert set(payload) == {"config", "environment", "averages", "tasks", "results"}
        assert payload["results"][0]["class_recall"] == {"0": 0.8}
        assert "numpy" in payload["environment"]

    def test_render_switches_on_format(self, report):
        assert report.render("csv").startswith("task,")
        assert report.render("json").startswith("{")


class TestResultTable:
    def test_float_cells_use_six_decimals(self):
        table = ResultTable(title="t", columns=["name", "score"], rows=[{"name": "x", "score": 0.5}])
        assert table.to_csv() == "name,score\nx,0.500000\n"

    def test_numpy_values_serialise(self):
        table = ResultTable(title="t", columns=["score"], rows=[{"score": np.float64(0.25)}])
        assert json.loads(table.to_json())["rows"] == [{"score": 0.25}]
