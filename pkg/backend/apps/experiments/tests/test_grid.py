"""
Tests for grid search and accuracy sweeps.
"""

from dataclasses import replace

import pytest

from apps.core.exceptions import ParameterError, ProtocolError
from apps.datasets.services.synthetic import make_shifted_domains
from apps.experiments.services.grid import GridSpec, grid_search, point_hyperparams
from apps.experiments.services.reports import AVERAGE_ROW
from apps.experiments.services.sweeps import sweep_hyperparameter, sweep_labeled_fraction


class TestGridSpec:
    def test_full_scope_size(self):
        assert GridSpec.full_scope().size == 10 * 5 * 5 * 11 * 11 * 5

    def test_points_enumerate_each_combination_once(self):
        spec = GridSpec(values={"sigma": [0.01, 0.1], "c_s": [1.0, 10.0, 100.0], "n": [5]})
        points = spec.points()
        assert len(points) == spec.size == 6
        keys = {(p["sigma"], p["c_s"], p["n"]) for p in points}
        assert len(keys) == 6

    def test_scalar_value_becomes_list(self):
        assert GridSpec(values={"sigma": 0.5}).values == {"sigma": [0.5]}

    @pytest.mark.parametrize("options", [
        {"values": {}},
        {"values": {"lambda": [1.0]}},
        {"values": {"sigma": []}},
        {"values": {"sigma": [1.0]}, "mode": "cheat"},
        {"values": {"sigma": [1.0]}, "repeats": 0},
        {"values": {"sigma": [1.0]}, "fraction": 1.0},
        {"values": {"sigma": [1.0]}, "seed": -3},
    ])
    def test_invalid(self, options):
        with pytest.raises(ParameterError):
            GridSpec(**options)


class TestPointHyperparams:
    def test_point_overrides_and_forces_one_enhancement_group(self, small_hyperparams):
        base = replace(small_hyperparams, bls=replace(small_hyperparams.bls, m=2))
        hp = point_hyperparams(base, {"n": 7, "q": 3, "c_t": 5.0, "sigma": 0.0})
        assert hp.bls.m == 1
        assert (hp.bls.n, hp.bls.q, hp.bls.r) == (7, 3, base.bls.r)
        assert hp.c_t == 5.0
        assert hp.sigma == 0.0
        assert hp.c_s == base.c_s


class TestGridSearch:
    def test_single_point(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        spec = GridSpec(values={"sigma": [0.1]}, fraction=0.2, seed=1)
        result = grid_search(source, target, spec, base=small_hyperparams)

        assert result.best_index == 0
        assert result.best_point == {"sigma": 0.1}
        assert len(result.scores()) == 1
        assert result.best_score == result.scores()[0]
        assert result.best_hyperparams.sigma == 0.1

    def test_best_point_wins(self, shifted_domains, small_hyperparams, mocker):
        source, target = shifted_domains
        scores = [0.5, 0.9, 0.7, 0.9]
        mocker.patch(
            "apps.experiments.services.grid._score_point",
            side_effect=lambda source, splits, hp, mode, seed, index: [scores[index]],
        )
        spec = GridSpec(values={"c_s": [1.0, 10.0], "c_t": [1.0, 10.0]}, fraction=0.2)
        result = grid_search(source, target, spec, base=small_hyperparams)

        assert result.best_index == 1
        assert result.best_point == spec.points()[1]
        assert result.best_score == 0.9
        assert result.scores() == scores

    def test_ties_go_to_the_earliest_point(self, shifted_domains, small_hyperparams, mocker):
        source, target = shifted_domains
        mocker.patch("apps.experiments.services.grid._score_point", return_value=[0.7])
        spec = GridSpec(values={"sigma": [0.01, 0.1, 1.0]}, fraction=0.2)
        assert grid_search(source, target, spec, base=small_hyperparams).best_index == 0

    def test_holdout_needs_two_labeled_per_class(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        spec = GridSpec(values={"sigma": [0.1]}, fraction=0.02)
        with pytest.raises(ProtocolError):
            grid_search(source, target, spec, base=small_hyperparams)

    def test_oracle_accepts_one_labeled_per_class(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        spec = GridSpec(values={"sigma": [0.1]}, mode="oracle", fraction=0.02)
        assert grid_search(source, target, spec, base=small_hyperparams).best_index == 0

    def test_oracle_at_least_holdout(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        values = {"sigma": [0.01, 1.0], "c_t": [1.0, 100.0]}
        holdout = grid_search(
            source, target, GridSpec(values=values, mode="holdout", seed=3, fraction=0.2), base=small_hyperparams,
        )
        oracle = grid_search(
            source, target, GridSpec(values=values, mode="oracle", seed=3, fraction=0.2), base=small_hyperparams,
        )
        assert oracle.best_score >= oracle.scores()[holdout.best_index]

    def test_deterministic(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        spec = GridSpec(values={"c_t": [1.0, 100.0]}, repeats=2, seed=9, fraction=0.2)
        first = grid_search(source, target, spec, base=small_hyperparams)
        second = grid_search(source, target, spec, base=small_hyperparams, jobs=2)
        assert first.scores() == second.scores()

    def test_table_and_render(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        spec = GridSpec(values={"sigma": [0.01, 0.1]}, fraction=0.2)
        result = grid_search(source, target, spec, base=small_hyperparams)

        assert result.table.columns == ["index", "sigma", "score", "score_std"]
        assert result.render("csv").splitlines()[0] == "index,sigma,score,score_std"
        assert '"best_index"' in result.render("json")


class TestFractionSweep:
    def test_rows_per_fraction_plus_average(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        fractions = [0.1, 0.2, 0.3, 0.4, 0.5]
        table = sweep_labeled_fraction(
            source, target, small_hyperparams, fractions, seeds=[0, 1],
            methods=("dabls", "bls_source_only"),
        )
        assert table.column("fraction") == fractions
        assert table.rows[-1]["fraction"] == AVERAGE_ROW
        assert table.columns == [
            "fraction", "dabls_accuracy", "dabls_std", "bls_source_only_accuracy", "bls_source_only_std",
        ]
        mean = sum(table.column("dabls_accuracy")) / len(fractions)
        assert table.rows[-1]["dabls_accuracy"] == pytest.approx(mean)

    def test_single_cell(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        table = sweep_labeled_fraction(source, target, small_hyperparams, [0.3], seeds=[4])
        assert table.column("fraction") == [0.3]
        assert table.rows[0]["dabls_std"] == 0.0

    def test_more_labels_help_under_shift(self, small_hyperparams):
        source, target = make_shifted_domains(source_samples=150, target_samples=150, seed=31)
        table = sweep_labeled_fraction(source, target, small_hyperparams, [0.1, 0.5], seeds=list(range(10)))
        low, high = table.column("dabls_accuracy")
        assert high >= low

    @pytest.mark.parametrize("fractions", [[], [0.0], [1.0], [0.2, 1.5]])
    def test_invalid_fractions(self, shifted_domains, small_hyperparams, fractions):
        source, target = shifted_domains
        with pytest.raises(ParameterError):
            sweep_labeled_fraction(source, target, small_hyperparams, fractions, seeds=[0])


class TestSensitivitySweep:
    def test_alias_and_rows(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        table = sweep_hyperparameter(
            source, target, small_hyperparams, "c_T", [1.0, 100.0], fraction=0.2, seeds=[0],
        )
        assert table.columns == ["c_t", "dabls_accuracy", "dabls_std"]
        assert table.column("c_t") == [1.0, 100.0]
        assert table.meta["parameter"] == "c_t"

    def test_unknown_parameter(self, shifted_domains, small_hyperparams):
        source, target = shifted_domains
        with pytest.raises(ParameterError):
            sweep_hyperparameter(source, target, small_hyperparams, "q", [1, 2], fraction=0.2, seeds=[0])

    def test_invalid_value_rejected_before_fitting(self, shifted_domains, small_hyperparams, mocker):
        source, target = shifted_domains
        run_task = mocker.patch("apps.experiments.services.sweeps.run_task")
        with pytest.raises(ParameterError):
            sweep_hyperparameter(source, target, small_hyperparams, "sigma", [0.1, -1.0], fraction=0.2, seeds=[0])
        run_task.assert_not_called()
