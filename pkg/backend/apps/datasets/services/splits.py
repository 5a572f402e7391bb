"""
Semi-supervised target splits.

The target domain is divided into a small labeled part and an unlabeled
part, class by class. For a class with n_c samples the labeled part takes
max(1, round(fraction · n_c)) samples (halves round up), picked by a seeded
shuffle. Classes absent from the target contribute nothing.
"""

import logging
from dataclasses import dataclass

import numpy as np

from apps.core.exceptions import ParameterError, ShapeError
from apps.core.seeding import validate_seed
from apps.datasets.services.loader import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TargetSplit:
    """Labeled / unlabeled partition of one target domain."""

    labeled: Dataset
    unlabeled_features: np.ndarray
    unlabeled_truth: np.ndarray
    labeled_indices: np.ndarray
    unlabeled_indices: np.ndarray
    labeled_fraction: float
    seed: int

    @property
    def num_unlabeled(self) -> int:
        return self.unlabeled_features.shape[0]


@dataclass(frozen=True, eq=False)
class DomainSplit:
    """Fully labeled source plus a split target."""

    source: Dataset
    target: TargetSplit

    def __post_init__(self):
        labeled = self.target.labeled
        if self.source.num_features != labeled.num_features:
            raise ShapeError(
                f"source has D={self.source.num_features}, target has D={labeled.num_features}"
            )
        if self.source.num_classes != labeled.num_classes:
            raise ShapeError(
                f"source has C={self.source.num_classes}, target has C={labeled.num_classes}"
            )

    @property
    def target_labeled(self) -> Dataset:
        return self.target.labeled

    @property
    def target_unlabeled_features(self) -> np.ndarray:
        return self.target.unlabeled_features

    @property
    def target_unlabeled_truth(self) -> np.ndarray:
        return self.target.unlabeled_truth


def labeled_count(class_size: int, fraction: float) -> int:
    """Number of labeled samples drawn from a class of ``class_size``."""
    return max(1, int(np.floor(fraction * class_size + 0.5)))


def stratified_split(target: Dataset, labeled_fraction: float, seed: int) -> TargetSplit:
    """Split ``target`` into labeled and unlabeled parts, stratified by class.

    Args:
        target: The target domain.
        labeled_fraction: Fraction in (0, 1) of each class to label.
        seed: Seed for the per-class shuffle.

    Returns:
        A TargetSplit; index arrays are sorted ascending.

    Raises:
        ParameterError: If the fraction is outside (0, 1).
    """
    labeled_fraction = float(labeled_fraction)
    if not 0.0 < labeled_fraction < 1.0:
        raise ParameterError(f"labeled fraction must lie in (0, 1), got {labeled_fraction}")
    seed = validate_seed(seed)

    rng = np.random.default_rng(seed)
    chosen = []
    for cls in range(target.num_classes):
        members = np.flatnonzero(target.labels == cls)
        if members.size == 0:
            continue
        take = labeled_count(members.size, labeled_fraction)
        chosen.append(rng.permutation(members)[:take])

    labeled_indices = np.sort(np.concatenate(chosen))
    mask = np.ones(target.num_samples, dtype=bool)
    mask[labeled_indices] = False
    unlabeled_indices = np.flatnonzero(mask)

    logger.debug(
        "Split %s: %d labeled / %d unlabeled (fraction=%.2f, seed=%d)",
        target.domain_name, labeled_indices.size, unlabeled_indices.size, labeled_fraction, seed,
    )
    return TargetSplit(
        labeled=target.subset(labeled_indices),
        unlabeled_features=target.features[unlabeled_indices],
        unlabeled_truth=target.labels[unlabeled_indices],
        labeled_indices=labeled_indices,
        unlabeled_indices=unlabeled_indices,
        labeled_fraction=labeled_fraction,
        seed=seed,
    )
