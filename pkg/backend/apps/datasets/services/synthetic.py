"""
Seeded synthetic domain pairs.

Class clusters are isotropic Gaussians whose centres sit on a circle. The
target domain applies a rotation about the origin followed by a shift, so
a classifier trained on the source alone degrades on the target.
"""

import numpy as np

from apps.core.exceptions import ParameterError
from apps.core.seeding import validate_seed
from apps.datasets.services.loader import Dataset


def _class_sizes(total: int, proportions, num_classes: int) -> np.ndarray:
    proportions = np.asarray(proportions, dtype=np.float64)
    if proportions.shape != (num_classes,) or np.any(proportions <= 0):
        raise ParameterError(f"expected {num_classes} positive class proportions, got {proportions}")
    proportions = proportions / proportions.sum()
    sizes = np.maximum(1, np.floor(proportions * total + 0.5).astype(np.int64))
    sizes[np.argmax(sizes)] += total - sizes.sum()
    return sizes


def _draw_domain(rng, sizes, centres, spread, rotation, shift, name) -> Dataset:
    features, labels = [], []
    for cls, (size, centre) in enumerate(zip(sizes, centres)):
        features.append(centre + spread * rng.standard_normal((size, centres.shape[1])))
        labels.append(np.full(size, cls, dtype=np.int64))
    points = np.vstack(features) @ rotation.T + shift
    return Dataset(
        features=points,
        labels=np.concatenate(labels),
        num_classes=len(sizes),
        domain_name=name,
    )


def make_shifted_domains(
    num_classes: int = 3,
    source_samples: int = 300,
    target_samples: int = 300,
    rotation_degrees: float = 30.0,
    shift=(4.0, -2.0),
    radius: float = 3.0,
    spread: float = 0.5,
    source_proportions=None,
    target_proportions=None,
    seed: int = 0,
) -> tuple[Dataset, Dataset]:
    """Return a ``(source, target)`` pair of 2-D Gaussian-cluster domains.

    Args:
        num_classes: Number of clusters, spaced evenly on a circle.
        source_samples: Source size; split across classes by ``source_proportions``.
        target_samples: Target size; split by ``target_proportions``.
        rotation_degrees: Rotation applied to the target about the origin.
        shift: Translation applied to the target after rotation.
        radius: Distance of cluster centres from the origin.
        spread: Standard deviation of each cluster.
        source_proportions: Relative class sizes; balanced by default.
        target_proportions: Relative class sizes; balanced by default.
        seed: Seed for every draw.
    """
    if num_classes < 1:
        raise ParameterError(f"num_classes must be at least 1, got {num_classes}")
    rng = np.random.default_rng(validate_seed(seed))

    angles = 2.0 * np.pi * np.arange(num_classes) / num_classes
    centres = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    balanced = np.ones(num_classes)

    theta = np.deg2rad(rotation_degrees)
    rotation = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])

    source = _draw_domain(
        rng,
        _class_sizes(source_samples, balanced if source_proportions is None else source_proportions, num_classes),
        centres, spread, np.eye(2), np.zeros(2), "source",
    )
    target = _draw_domain(
        rng,
        _class_sizes(target_samples, balanced if target_proportions is None else target_proportions, num_classes),
        centres, spread, rotation, np.asarray(shift, dtype=np.float64), "target",
    )
    return source, target
