"""Plain BLS classifier: fit on one labeled dataset, predict by argmax."""

import logging
from dataclasses import dataclass, field

import numpy as np

from apps.bls.services.config import BlsConfig
from apps.bls.services.mapping import BlsMapping, hidden, init_mapping
from apps.bls.services.ridge import bls_train
from apps.core.exceptions import NumericError, ShapeError
from apps.datasets.services.labels import one_hot
from apps.datasets.services.loader import Dataset
from apps.datasets.services.normalizer import Normalizer, normalize_apply, normalize_fit

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BlsModel:
    mapping: BlsMapping
    weights: np.ndarray
    normalizer: Normalizer
    num_classes: int
    training_summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.weights.shape != (self.mapping.num_hidden, self.num_classes):
            raise ShapeError(
                f"output weights must be {self.mapping.num_hidden}×{self.num_classes}, "
                f"got {self.weights.shape}"
            )
        if not np.all(np.isfinite(self.weights)):
            raise NumericError("output weights contain non-finite values")

    @property
    def input_dim(self) -> int:
        return self.mapping.input_dim


def argmax_labels(scores: np.ndarray) -> np.ndarray:
    """Row-wise argmax; ties go to the lowest class index."""
    if scores.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.argmax(scores, axis=1).astype(np.int64)


def fit_bls(
    dataset: Dataset,
    config: BlsConfig | None = None,
    normalization: str | None = None,
) -> BlsModel:
    """Train a BLS classifier on ``dataset`` (normaliser fitted on the same data)."""
    config = config or BlsConfig.from_settings()
    normalizer = normalize_fit(dataset.features, mode=normalization)
    features = normalize_apply(normalizer, dataset.features)

    mapping = init_mapping(dataset.num_features, config, train_features=features)
    A = hidden(features, mapping)
    weights = bls_train(A, one_hot(dataset.labels, dataset.num_classes), config.ridge_lambda)

    logger.info(
        "Fitted BLS on %s: N=%d, F=%d, C=%d, λ=%g",
        dataset.domain_name, dataset.num_samples, config.num_hidden, dataset.num_classes,
        config.ridge_lambda,
    )
    return BlsModel(
        mapping=mapping,
        weights=weights,
        normalizer=normalizer,
        num_classes=dataset.num_classes,
        training_summary={
            "domain": dataset.domain_name,
            "num_samples": dataset.num_samples,
        },
    )


def bls_predict(model: BlsModel, X) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(scores, labels)`` for the rows of ``X``."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.input_dim:
        raise ShapeError(f"expected D={model.input_dim} input columns, got shape {X.shape}")
    if X.shape[0] == 0:
        return np.zeros((0, model.num_classes)), np.zeros(0, dtype=np.int64)
    scores = hidden(normalize_apply(model.normalizer, X), model.mapping) @ model.weights
    return scores, argmax_labels(scores)
