"""Class-imbalance weights τ_i = τ₀ / N_i, counted within one partition."""

from dataclasses import dataclass

import numpy as np

from apps.core.exceptions import ParameterError, ShapeError


@dataclass(frozen=True, eq=False)
class ImbalanceWeights:
    tau: np.ndarray

    @property
    def squared(self) -> np.ndarray:
        """Diagonal of δᵀδ."""
        return self.tau * self.tau

    @classmethod
    def uniform(cls, num_samples: int) -> "ImbalanceWeights":
        """δ = I."""
        return cls(tau=np.ones(num_samples))


def mean_class_size(labels) -> float:
    """Samples per present class; the default τ₀."""
    labels = np.asarray(labels)
    return labels.shape[0] / np.unique(labels).shape[0]


def imbalance_weights(labels, tau0: float | None = None) -> ImbalanceWeights:
    """Per-sample weights inversely proportional to class size.

    Args:
        labels: Integer labels of one partition.
        tau0: Scale τ₀ > 0; defaults to the partition's mean class size.

    Raises:
        ParameterError: If ``tau0`` is not positive.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.ndim != 1 or labels.shape[0] == 0:
        raise ShapeError(f"labels must be a non-empty vector, got shape {labels.shape}")
    if tau0 is None:
        tau0 = mean_class_size(labels)
    if not tau0 > 0:
        raise ParameterError(f"tau0 must be positive, got {tau0}")

    counts = np.bincount(labels)
    return ImbalanceWeights(tau=float(tau0) / counts[labels])
