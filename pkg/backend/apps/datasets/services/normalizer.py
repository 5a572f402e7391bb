"""
Per-feature standardisation.

Two modes, chosen by ``settings.FEATURE_NORMALIZATION`` or per call:
    - "zscore" — subtract the column mean, divide by the population stddev
    - "none"   — identity (mean 0, stddev 1)
"""

import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from apps.core.exceptions import EmptyDatasetError, ParameterError, ShapeError

logger = logging.getLogger(__name__)

NORMALIZATION_MODES = ("none", "zscore")


@dataclass(frozen=True, eq=False)
class Normalizer:
    mean: np.ndarray
    std: np.ndarray

    @property
    def num_features(self) -> int:
        return self.mean.shape[0]

    @classmethod
    def identity(cls, num_features: int) -> "Normalizer":
        return cls(mean=np.zeros(num_features), std=np.ones(num_features))


def default_normalization() -> str:
    return getattr(settings, "FEATURE_NORMALIZATION", "zscore")


def normalize_fit(features, mode: str | None = None) -> Normalizer:
    """Fit a Normalizer on ``features`` (at least one row).

    Constant columns get their stddev floored at ``NORMALIZER_STD_FLOOR`` so
    they map to 0.
    """
    mode = mode or default_normalization()
    if mode not in NORMALIZATION_MODES:
        raise ParameterError(f"normalization must be one of {NORMALIZATION_MODES}, got '{mode}'")

    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2:
        raise ShapeError(f"features must be a matrix, got shape {features.shape}")
    if features.shape[0] == 0:
        raise EmptyDatasetError("cannot fit a normalizer on zero rows")

    if mode == "none":
        return Normalizer.identity(features.shape[1])

    floor = float(getattr(settings, "NORMALIZER_STD_FLOOR", 1e-12))
    mean = features.mean(axis=0)
    std = np.maximum(features.std(axis=0), floor)
    degenerate = int(np.sum(std <= floor))
    if degenerate:
        logger.debug("Normalizer: %d constant feature columns", degenerate)
    return Normalizer(mean=mean, std=std)


def normalize_apply(normalizer: Normalizer, features) -> np.ndarray:
    """Return ``(features - mean) / std`` column-wise."""
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[1] != normalizer.num_features:
        raise ShapeError(
            f"normalizer expects {normalizer.num_features} features, got shape {features.shape}"
        )
    return (features - normalizer.mean) / normalizer.std
