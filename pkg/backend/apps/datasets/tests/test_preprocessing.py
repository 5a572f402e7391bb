"""
Tests for label encoding and feature normalisation.
"""

import numpy as np
import pytest

from apps.core.exceptions import LabelRangeError, ParameterError, ShapeError
from apps.datasets.services.labels import one_hot
from apps.datasets.services.normalizer import Normalizer, normalize_apply, normalize_fit


class TestOneHot:
    def test_second_class_of_ten(self):
        encoded = one_hot(np.array([1]), 10)

        np.testing.assert_array_equal(encoded, [[0, 1, 0, 0, 0, 0, 0, 0, 0, 0]])

    def test_single_class(self):
        np.testing.assert_array_equal(one_hot(np.array([0]), 1), [[1.0]])

    def test_permuted_identity(self):
        encoded = one_hot(np.array([0, 2, 1]), 3)

        np.testing.assert_array_equal(encoded, np.eye(3)[[0, 2, 1]])

    def test_argmax_recovers_labels(self):
        labels = np.random.default_rng(0).integers(0, 7, size=200)

        encoded = one_hot(labels, 7)

        np.testing.assert_array_equal(encoded.sum(axis=1), np.ones(200))
        np.testing.assert_array_equal(encoded.argmax(axis=1), labels)

    def test_label_out_of_range(self):
        with pytest.raises(LabelRangeError):
            one_hot(np.array([0, 3]), 3)


class TestNormalizer:
    def test_two_point_zscore(self):
        normalizer = normalize_fit(np.array([[0.0], [2.0]]), mode="zscore")

        np.testing.assert_allclose(normalizer.mean, [1.0])
        np.testing.assert_allclose(normalizer.std, [1.0])
        np.testing.assert_allclose(normalize_apply(normalizer, [[0.0], [2.0]]), [[-1.0], [1.0]])
        np.testing.assert_allclose(normalize_apply(normalizer, [[1.0]]), [[0.0]])

    def test_constant_column_maps_to_zero(self):
        normalizer = normalize_fit(np.array([[5.0], [5.0]]), mode="zscore")

        np.testing.assert_array_equal(normalize_apply(normalizer, [[5.0], [5.0]]), [[0.0], [0.0]])

    def test_fitted_columns_are_standardised(self):
        features = np.random.default_rng(1).normal(3.0, 7.0, size=(50, 4))

        normalized = normalize_apply(normalize_fit(features, mode="zscore"), features)

        assert np.all(np.abs(normalized.mean(axis=0)) < 1e-8)
        assert np.all(np.abs(normalized.std(axis=0) - 1.0) < 1e-8)

    def test_none_mode_is_identity(self):
        features = np.array([[1.0, 2.0], [3.0, 4.0]])

        normalizer = normalize_fit(features, mode="none")

        np.testing.assert_array_equal(normalize_apply(normalizer, features), features)

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            normalize_apply(Normalizer.identity(3), np.zeros((2, 2)))

    def test_unknown_mode(self):
        with pytest.raises(ParameterError):
            normalize_fit(np.zeros((2, 2)), mode="minmax")
