"""
Tests for experiment configuration and the experiment-kind dispatcher.
"""

import json

import pytest

from apps.adaptation.services.hyperparams import HyperParams
from apps.core.exceptions import DatasetFormatError, DatasetNotFoundError, ParameterError
from apps.experiments.services.config import (
    ExperimentConfig,
    apply_overrides,
    experiment_config_from_dict,
    load_experiment_config,
    parse_grid_values,
    parse_overrides,
)
from apps.experiments.services.execution import execute_experiment, grid_spec
from apps.experiments.services.grid import GridResult
from apps.experiments.services.reports import ExperimentReport, ResultTable


class TestParseOverrides:
    def test_pairs(self):
        assert parse_overrides("q=10, cs=1e3,sigma=0.1") == {"q": "10", "cs": "1e3", "sigma": "0.1"}

    def test_empty(self):
        assert parse_overrides(None) == {}
        assert parse_overrides(" , ") == {}

    def test_missing_equals(self):
        with pytest.raises(ParameterError):
            parse_overrides("q10")


class TestApplyOverrides:
    def test_aliases_reach_both_levels(self, small_hyperparams):
        hp = apply_overrides({"cs": "1e3", "c_T": "5", "n": "20", "s": "0.5"}, base=small_hyperparams)
        assert hp.c_s == 1000.0
        assert hp.c_t == 5.0
        assert hp.bls.n == 20 and isinstance(hp.bls.n, int)
        assert hp.bls.enhancement_scale == 0.5
        assert hp.bls.q == small_hyperparams.bls.q

    def test_base_is_untouched(self, small_hyperparams):
        apply_overrides({"sigma": "2"}, base=small_hyperparams)
        assert small_hyperparams.sigma == 0.1

    @pytest.mark.parametrize("raw, expected", [("auto", None), ("none", None), ("12", 12.0)])
    def test_tau0(self, small_hyperparams, raw, expected):
        assert apply_overrides({"tau0": raw}, base=small_hyperparams).tau0 == expected

    @pytest.mark.parametrize("raw, expected", [("off", False), ("yes", True), (False, False)])
    def test_class_weighting(self, small_hyperparams, raw, expected):
        assert apply_overrides({"class_weighting": raw}, base=small_hyperparams).class_weighting is expected

    @pytest.mark.parametrize("overrides", [
        {"gamma": "1"},
        {"n": "2.5"},
        {"q": "ten"},
        {"sigma": "-1"},
        {"class_weighting": "maybe"},
    ])
    def test_invalid(self, small_hyperparams, overrides):
        with pytest.raises(ParameterError):
            apply_overrides(overrides, base=small_hyperparams)


class TestExperimentConfig:
    def test_from_dict_resolves_relative_paths(self, tmp_path):
        config = experiment_config_from_dict(
            {
                "domains": [{"name": "A", "path": "a.csv"}, {"name": "B", "path": "/data/b.csv"}],
                "method": "bls_source_only",
                "hyperparams": {"q": 3, "cs": 10},
                "seeds": [1, 2],
                "jobs": 2,
            },
            base_dir=tmp_path,
        )
        assert config.domains[0].path == tmp_path / "a.csv"
        assert str(config.domains[1].path) == "/data/b.csv"
        assert config.methods == ("bls_source_only",)
        assert config.hyperparams.bls.q == 3
        assert config.hyperparams.c_s == 10.0
        assert config.seeds == (1, 2)
        assert config.jobs == 2

    def test_stored_echo_round_trips(self, small_hyperparams):
        config = ExperimentConfig(hyperparams=small_hyperparams, seeds=(4,), fraction=0.3)
        rebuilt = experiment_config_from_dict(json.loads(json.dumps(config.to_dict())))
        assert rebuilt.hyperparams == small_hyperparams
        assert rebuilt.seeds == (4,)
        assert rebuilt.fraction == 0.3

    def test_unknown_keys_are_ignored(self):
        config = experiment_config_from_dict({"domains": [], "colour": "blue"})
        assert config.methods == ("dabls",)

    @pytest.mark.parametrize("changes", [
        {"methods": ("svm",)},
        {"seeds": (-1,)},
        {"fraction": 0.0},
    ])
    def test_invalid(self, changes):
        with pytest.raises(ParameterError):
            ExperimentConfig(**changes)

    def test_pair_needs_two_domains(self):
        with pytest.raises(ParameterError):
            ExperimentConfig().pair()

    def test_not_an_object(self):
        with pytest.raises(DatasetFormatError):
            experiment_config_from_dict(["domains"])

    def test_load_missing(self, tmp_path):
        with pytest.raises(DatasetNotFoundError):
            load_experiment_config(tmp_path / "missing.json")

    def test_load_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{domains: ")
        with pytest.raises(DatasetFormatError):
            load_experiment_config(path)

    def test_load_from_disk(self, tmp_path):
        path = tmp_path / "experiment.json"
        path.write_text(json.dumps({"domains": [{"name": "A", "path": "a.csv"}], "fraction": 0.25}))
        config = load_experiment_config(path)
        assert config.fraction == 0.25
        assert config.domains[0].path == tmp_path / "a.csv"


class TestParseGridValues:
    def test_canonical_names(self):
        assert parse_grid_values("n=10,20; cs=1,10") == {"n": [10, 20], "c_s": [1.0, 10.0]}

    @pytest.mark.parametrize("text", ["", "lambda=1,2", "gamma=1", "sigma"])
    def test_invalid(self, text):
        with pytest.raises(ParameterError):
            parse_grid_values(text)


class TestExecuteExperiment:
    @pytest.fixture
    def config(self, domain_files, small_hyperparams):
        payload = {
            "domains": [
                {"name": path.stem, "path": str(path.with_suffix(".csv"))}
                for path in domain_files(count=2, samples=45)
            ],
            "seeds": [0],
            "fraction": 0.2,
            "fractions": [0.2, 0.4],
        }
        config = experiment_config_from_dict(payload)
        config.hyperparams = small_hyperparams
        return config

    def test_unknown_kind(self, config):
        with pytest.raises(ParameterError):
            execute_experiment("train", config)

    def test_bench(self, config):
        result = execute_experiment("bench", config)
        assert isinstance(result, ExperimentReport)
        assert len(result.results) == 2

    def test_grid(self, config):
        config.grid = {"values": {"sigma": [0.01, 0.1]}, "mode": "oracle"}
        result = execute_experiment("grid", config)
        assert isinstance(result, GridResult)
        assert result.spec.mode == "oracle"
        assert len(result.scores()) == 2

    def test_grid_needs_values(self, config, mocker):
        load = mocker.patch("apps.experiments.services.execution.load_domains")
        config.grid = {"mode": "holdout"}
        with pytest.raises(ParameterError):
            execute_experiment("grid", config)
        load.assert_not_called()

    def test_grid_spec_full_scope(self, config):
        config.grid = {"full_scope": True, "mode": "oracle", "repeats": 2}
        spec = grid_spec(config)
        assert spec.size == 151250
        assert spec.repeats == 2

    def test_sweep(self, config):
        result = execute_experiment("sweep", config)
        assert isinstance(result, ResultTable)
        assert result.column("fraction") == [0.2, 0.4]

    def test_sensitivity(self, config):
        config.sensitivity = {"parameter": "sigma", "values": [0.0, 0.1]}
        result = execute_experiment("sensitivity", config)
        assert result.column("sigma") == [0.0, 0.1]

    def test_sensitivity_needs_values(self, config):
        config.sensitivity = {"parameter": "sigma"}
        with pytest.raises(ParameterError):
            execute_experiment("sensitivity", config)


def test_default_hyperparams_follow_settings(settings):
    settings.DABLS_MANIFOLD_WEIGHT = 0.5
    assert HyperParams.from_settings().sigma == 0.5
