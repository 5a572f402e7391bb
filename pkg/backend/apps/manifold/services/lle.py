"""
Locally-linear-embedding graph over training features.

Pipeline:
  1. k nearest neighbours Q_i of each row (exact search)
  2. reconstruction weights V: each x_i as an affine combination of its
     neighbours, from the regularised local Gram system G w = 1
  3. graph matrix M = (I − V)ᵀ(I − V), symmetrised

Tr(YᵀMY) then equals Σ_i ‖y_i − Σ_j V_ij y_j‖², the penalty used by the
domain-adaptation solver.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.conf import settings
from scipy import linalg, sparse

from apps.core.exceptions import NumericError, ParameterError, ShapeError
from apps.manifold.services.neighbors import knn_neighbors

logger = logging.getLogger(__name__)

TRACE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class LleGraph:
    k: int
    neighbors: np.ndarray
    weights: sparse.csr_matrix
    graph: sparse.csr_matrix

    @property
    def num_samples(self) -> int:
        return self.neighbors.shape[0]


def default_neighbors() -> int:
    return int(getattr(settings, "LLE_NEIGHBORS", 5))


def default_regularization() -> float:
    return float(getattr(settings, "LLE_REGULARIZATION", 1e-3))


def local_weights(X: np.ndarray, index: int, neighbors: np.ndarray, reg: float) -> np.ndarray:
    """Affine reconstruction weights of row ``index`` from ``neighbors``."""
    offsets = X[index] - X[neighbors]
    gram = offsets @ offsets.T
    k = len(neighbors)
    trace = float(np.trace(gram))
    if trace > 0:
        gram[np.diag_indices(k)] += reg * trace / k
    else:
        gram[np.diag_indices(k)] += TRACE_FLOOR

    try:
        solution = linalg.solve(gram, np.ones(k), assume_a="pos")
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericError(f"local Gram system of sample {index} is singular: {exc}") from exc

    total = solution.sum()
    if not np.isfinite(total) or total == 0.0:
        raise NumericError(f"reconstruction weights of sample {index} cannot be normalised")
    return solution / total


def reconstruction_weights(X, neighbors, reg: float | None = None) -> sparse.csr_matrix:
    """Build the N×N sparse reconstruction matrix V.

    Args:
        X: N×D features.
        neighbors: N×k index array from ``knn_neighbors``.
        reg: Gram regularisation, scaled by trace(G)/k.

    Raises:
        NumericError: With the sample index when a local system is singular.
    """
    X = np.asarray(X, dtype=np.float64)
    neighbors = np.asarray(neighbors, dtype=np.int64)
    reg = default_regularization() if reg is None else float(reg)
    if reg < 0:
        raise ParameterError(f"LLE regularisation must be non-negative, got {reg}")
    if neighbors.ndim != 2 or neighbors.shape[0] != X.shape[0]:
        raise ShapeError(f"neighbour sets {neighbors.shape} do not match {X.shape[0]} samples")

    num_samples, k = neighbors.shape
    values = np.empty((num_samples, k))
    for index in range(num_samples):
        values[index] = local_weights(X, index, neighbors[index], reg)

    rows = np.repeat(np.arange(num_samples), k)
    return sparse.csr_matrix(
        (values.ravel(), (rows, neighbors.ravel())), shape=(num_samples, num_samples)
    )


def graph_matrix(V) -> sparse.csr_matrix:
    """M = (I − V)ᵀ(I − V), symmetrised as (M + Mᵀ)/2."""
    V = sparse.csr_matrix(V, dtype=np.float64)
    if V.shape[0] != V.shape[1]:
        raise ShapeError(f"V must be square, got {V.shape}")
    residual = sparse.identity(V.shape[0], format="csr") - V
    M = (residual.T @ residual).tocsr()
    return ((M + M.T) * 0.5).tocsr()


def build_lle_graph(X, k: int | None = None, reg: float | None = None) -> LleGraph:
    """Run the full neighbour → weights → graph pipeline on ``X``."""
    k = default_neighbors() if k is None else int(k)
    neighbors = knn_neighbors(X, k)
    V = reconstruction_weights(X, neighbors, reg)
    M = graph_matrix(V)
    logger.debug("LLE graph: N=%d, k=%d, nnz(V)=%d, nnz(M)=%d", neighbors.shape[0], k, V.nnz, M.nnz)
    return LleGraph(k=k, neighbors=neighbors, weights=V, graph=M)


def empty_graph(num_samples: int) -> sparse.csr_matrix:
    """All-zero N×N graph, used when the manifold term is switched off."""
    return sparse.csr_matrix((num_samples, num_samples))


def graph_summary(graph: LleGraph) -> dict:
    """Diagnostics of an LleGraph for inspection output."""
    ones = np.ones(graph.num_samples)
    row_sums = np.asarray(graph.weights.sum(axis=1)).ravel()
    asymmetry = abs(graph.graph - graph.graph.T)
    return {
        "num_samples": graph.num_samples,
        "k": graph.k,
        "weights_nnz": int(graph.weights.nnz),
        "graph_nnz": int(graph.graph.nnz),
        "max_row_sum_error": float(np.max(np.abs(row_sums - 1.0))),
        "max_asymmetry": float(asymmetry.max()) if asymmetry.nnz else 0.0,
        "null_space_residual": float(np.max(np.abs(graph.graph @ ones))),
    }


def dump_coordinates(matrix, path) -> Path:
    """Write a sparse matrix as ``row col value`` text lines."""
    coo = sparse.coo_matrix(matrix)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([coo.row, coo.col, coo.data]) if coo.nnz else np.zeros((0, 3))
    np.savetxt(path, table, fmt=["%d", "%d", "%.17g"], delimiter=" ")
    return path
