"""Exact k-nearest-neighbour search by full distance sort."""

import numpy as np
from scipy.spatial.distance import cdist

from apps.core.exceptions import ParameterError, ShapeError


def knn_neighbors(X, k: int) -> np.ndarray:
    """Return an N×k array of neighbour indices for every row of ``X``.

    Row i lists the k rows closest to x_i in Euclidean distance, nearest
    first, excluding i itself. Equal distances are ordered by lower index.

    Raises:
        ParameterError: Unless 1 ≤ k ≤ N − 1.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeError(f"X must be a matrix, got shape {X.shape}")
    num_samples = X.shape[0]
    if int(k) != k or k < 1 or k > num_samples - 1:
        raise ParameterError(f"k must lie in [1, {num_samples - 1}] for N={num_samples}, got {k}")

    distances = cdist(X, X, metric="sqeuclidean")
    np.fill_diagonal(distances, np.inf)
    order = np.argsort(distances, axis=1, kind="stable")
    return order[:, : int(k)].astype(np.int64)
