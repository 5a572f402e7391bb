"""
Tests for the cross-domain task runner, benchmark and parallel execution.
"""

import numpy as np
import pytest

from apps.adaptation.services.hyperparams import HyperParams
from apps.bls.services.config import BlsConfig
from apps.bls.services.model import bls_predict, fit_bls
from apps.core.exceptions import DatasetNotFoundError, ParameterError, ShapeError
from apps.datasets.services.loader import Dataset, DomainManifest, load_manifest
from apps.datasets.services.synthetic import make_shifted_domains
from apps.experiments.services.metrics import accuracy
from apps.experiments.services.parallel import run_ordered
from apps.experiments.services.runner import (
    load_domains,
    ordered_pairs,
    run_benchmark,
    run_task,
)


def _square(value, offset=0):
    return value * value + offset


class TestRunOrdered:
    def test_serial_keeps_order(self):
        assert run_ordered(_square, [(1,), (2,), (3, 1)], jobs=1) == [1, 4, 10]

    def test_threads_keep_order(self):
        units = [(value,) for value in range(20)]
        assert run_ordered(_square, units, jobs=4) == [value * value for value in range(20)]

    @pytest.mark.parametrize("jobs", [0, -2])
    def test_invalid_jobs(self, jobs):
        with pytest.raises(ParameterError):
            run_ordered(_square, [(1,)], jobs=jobs)


class TestRunTask:
    def test_result_fields(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        result = run_task(source, target, small_hyperparams, 0.1, seed=4)

        assert result.task == "source→target"
        assert result.method == "dabls"
        assert result.seed == 4
        assert result.labeled_count + result.unlabeled_count == target.num_samples
        assert 0.0 <= result.accuracy <= 1.0
        assert set(result.class_recall) <= {0, 1, 2}
        assert result.fit_seconds >= 0.0 and result.predict_seconds >= 0.0

    @pytest.mark.parametrize("method", ["dabls", "bls_source_only"])
    def test_same_seed_same_result(self, shifted_domains, small_hyperparams, method):
        source, target = shifted_domains
        first = run_task(source, target, small_hyperparams, 0.1, seed=11, method=method)
        second = run_task(source, target, small_hyperparams, 0.1, seed=11, method=method)

        assert first.accuracy == second.accuracy
        assert first.class_recall == second.class_recall

    def test_both_methods_see_the_same_split(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        adaptive = run_task(source, target, small_hyperparams, 0.2, seed=2, method="dabls")
        baseline = run_task(source, target, small_hyperparams, 0.2, seed=2, method="bls_source_only")
        assert adaptive.labeled_count == baseline.labeled_count
        assert adaptive.unlabeled_count == baseline.unlabeled_count

    def test_source_only_on_identical_distributions(self, small_hyperparams):
        source, target = make_shifted_domains(
            source_samples=150, target_samples=150, rotation_degrees=0.0, shift=(0.0, 0.0), seed=21,
        )
        held_out, _ = make_shifted_domains(source_samples=150, target_samples=3, seed=22)

        result = run_task(source, target, small_hyperparams, 0.1, seed=0, method="bls_source_only")
        model = fit_bls(source, small_hyperparams.bls)
        source_accuracy = accuracy(bls_predict(model, held_out.features)[1], held_out.labels)

        assert abs(result.accuracy - source_accuracy) <= 0.05

    def test_unknown_method(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        with pytest.raises(ParameterError):
            run_task(source, target, small_hyperparams, 0.1, seed=0, method="svm")

    def test_incompatible_domains(self, shifted_domains, small_hyperparams):
        source, _ = shifted_domains
        wide = Dataset(
            features=np.zeros((6, 3)), labels=np.array([0, 1, 2, 0, 1, 2]), num_classes=3, domain_name="wide",
        )
        with pytest.raises(ShapeError):
            run_task(source, wide, small_hyperparams, 0.5, seed=0)

    def test_negative_seed(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        with pytest.raises(ParameterError):
            run_task(source, target, small_hyperparams, 0.1, seed=-1)


class TestBenchmark:
    @pytest.fixture
    def manifests(self, domain_files):
        return [load_manifest(path) for path in domain_files(count=3, samples=45)]

    def test_ordered_pairs(self, domain_files):
        datasets = load_domains([load_manifest(path) for path in domain_files(count=4, samples=30)])
        pairs = ordered_pairs(datasets)
        assert len(pairs) == 12
        assert all(source is not target for source, target in pairs)
        assert [(s.domain_name, t.domain_name) for s, t in pairs][:3] == [("D0", "D1"), ("D0", "D2"), ("D0", "D3")]

    def test_result_order(self, manifests, small_hyperparams):
        report = run_benchmark(
            manifests, small_hyperparams, 0.1, seeds=[0, 1], methods=("dabls", "bls_source_only"),
        )
        assert len(report.results) == 6 * 2 * 2
        assert [r.method for r in report.results[:4]] == ["dabls", "bls_source_only"] * 2
        assert report.results[0].task == report.results[3].task == "D0→D1"
        assert report.results[0].seed == report.results[1].seed
        assert report.results[0].seed != report.results[2].seed

    def test_averages_match_task_accuracies(self, manifests, small_hyperparams):
        report = run_benchmark(manifests, small_hyperparams, 0.1, seeds=[3])
        expected = np.mean([result.accuracy for result in report.results])
        assert report.averages()["dabls"]["accuracy"] == pytest.approx(expected, abs=1e-12)
        assert report.averages()["dabls"]["tasks"] == 6

    def test_jobs_do_not_change_results(self, manifests, small_hyperparams):
        serial = run_benchmark(manifests, small_hyperparams, 0.1, seeds=[5], jobs=1)
        threaded = run_benchmark(manifests, small_hyperparams, 0.1, seeds=[5], jobs=2)
        assert [r.accuracy for r in serial.results] == [r.accuracy for r in threaded.results]
        assert [r.seed for r in serial.results] == [r.seed for r in threaded.results]

    def test_config_echo(self, manifests, small_hyperparams):
        report = run_benchmark(manifests, small_hyperparams, 0.1, seeds=[0])
        assert report.config["methods"] == ["dabls"]
        assert report.config["seeds"] == [0]
        assert [domain["name"] for domain in report.config["domains"]] == ["D0", "D1", "D2"]

    def test_missing_file_fails_before_any_task(self, manifests, small_hyperparams, tmp_path, mocker):
        run_task_mock = mocker.patch("apps.experiments.services.runner.run_task")
        manifests.append(DomainManifest(name="ghost", path=tmp_path / "ghost.csv"))
        with pytest.raises(DatasetNotFoundError):
            run_benchmark(manifests, small_hyperparams, 0.1, seeds=[0])
        run_task_mock.assert_not_called()

    def test_needs_two_domains(self, manifests, small_hyperparams):
        with pytest.raises(ParameterError):
            run_benchmark(manifests[:1], small_hyperparams, 0.1, seeds=[0])

    def test_duplicate_names(self, manifests, small_hyperparams):
        with pytest.raises(ParameterError):
            run_benchmark([manifests[0], manifests[0]], small_hyperparams, 0.1, seeds=[0])

    def test_needs_a_seed(self, manifests, small_hyperparams):
        with pytest.raises(ParameterError):
            run_benchmark(manifests, small_hyperparams, 0.1, seeds=[])


@pytest.mark.slow
class TestTransferGain:
    def test_adaptation_beats_source_only_under_shift(self):
        hp = HyperParams(
            c_s=100.0, c_t=1000.0, sigma=0.1, k=5,
            bls=BlsConfig(n=10, q=10, m=1, r=100, sae_iters=0, ridge_lambda=1e-3),
        )
        gains = []
        for seed in range(20):
            source, target = make_shifted_domains(seed=seed)
            adaptive = run_task(source, target, hp, 0.1, seed=seed, method="dabls")
            baseline = run_task(source, target, hp, 0.1, seed=seed, method="bls_source_only")
            gains.append(adaptive.accuracy - baseline.accuracy)
        assert np.mean(gains) >= 0.05
