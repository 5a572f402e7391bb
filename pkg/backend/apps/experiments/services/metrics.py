"""Classification metrics."""

import numpy as np
from sklearn.metrics import accuracy_score, recall_score

from apps.core.exceptions import ShapeError


def _check_pair(predicted, truth) -> tuple[np.ndarray, np.ndarray]:
    predicted = np.asarray(predicted).reshape(-1)
    truth = np.asarray(truth).reshape(-1)
    if predicted.shape != truth.shape:
        raise ShapeError(
            f"predicted has {predicted.shape[0]} labels but truth has {truth.shape[0]}"
        )
    if truth.shape[0] == 0:
        raise ShapeError("accuracy is undefined for zero samples")
    return predicted, truth


def accuracy(predicted, truth) -> float:
    """Fraction of positions where ``predicted`` equals ``truth``."""
    predicted, truth = _check_pair(predicted, truth)
    return float(accuracy_score(truth, predicted))


def class_recall(predicted, truth, cls: int) -> float:
    """Recall of class ``cls``; 0.0 when the class is absent from ``truth``."""
    predicted, truth = _check_pair(predicted, truth)
    return float(recall_score(truth, predicted, labels=[cls], average=None, zero_division=0)[0])


def per_class_recall(predicted, truth) -> dict[int, float]:
    """Recall for every class present in ``truth``."""
    predicted, truth = _check_pair(predicted, truth)
    classes = np.unique(truth)
    scores = recall_score(truth, predicted, labels=classes, average=None, zero_division=0)
    return {int(cls): float(score) for cls, score in zip(classes, scores)}
