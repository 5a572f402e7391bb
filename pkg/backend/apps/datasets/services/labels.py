"""One-hot label encoding."""

import numpy as np

from apps.core.exceptions import LabelRangeError, ShapeError


def one_hot(labels, num_classes: int) -> np.ndarray:
    """Encode integer labels as an ``N×C`` one-hot matrix.

    Raises:
        LabelRangeError: If a label is negative or ``>= num_classes``.
    """
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ShapeError(f"labels must be a vector, got shape {labels.shape}")
    if num_classes < 1:
        raise LabelRangeError(f"num_classes must be at least 1, got {num_classes}")
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise LabelRangeError(
            f"labels must lie in [0, {num_classes}), found range [{labels.min()}, {labels.max()}]"
        )

    encoded = np.zeros((labels.shape[0], num_classes), dtype=np.float64)
    encoded[np.arange(labels.shape[0]), labels.astype(np.int64)] = 1.0
    return encoded
