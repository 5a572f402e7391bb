"""
Sparse auto-encoder fine-tuning of feature-node weights.

Given random feature codes Z = X·W_random + b, find a sparse W with

    min_W ‖Z W − X‖² + λ‖W‖₁

by iterative soft-thresholding. The smooth part has gradient Lipschitz
constant 2L with L the largest eigenvalue of ZᵀZ, so every step uses
t = 1/(2L): W ← soft(W − Zᵀ(ZW − X)/L, λ/(2L)). The transpose of the
result becomes the fine-tuned D×q feature weight.
"""

import logging
from typing import NamedTuple

import numpy as np

from apps.core.exceptions import NumericError, ParameterError, ShapeError

logger = logging.getLogger(__name__)

POWER_ITERATIONS = 200
POWER_TOLERANCE = 1e-12
LIPSCHITZ_MARGIN = 1.001


class SparseCode(NamedTuple):
    """Result of ``sparse_finetune``.

    ``weights`` is D×q (already transposed); ``degenerate`` is set when Z
    was all zeros and no fit was attempted.
    """

    weights: np.ndarray
    degenerate: bool
    objective: float
    lipschitz: float


def soft_threshold(values: np.ndarray, threshold: float) -> np.ndarray:
    return np.sign(values) * np.maximum(np.abs(values) - threshold, 0.0)


def lasso_objective(Z: np.ndarray, X: np.ndarray, W: np.ndarray, sae_lambda: float) -> float:
    """‖Z W − X‖² + λ‖W‖₁ for a q×D matrix ``W``."""
    residual = Z @ W - X
    return float(np.sum(residual * residual) + sae_lambda * np.sum(np.abs(W)))


def largest_eigenvalue(gram: np.ndarray) -> float:
    """Power-iteration estimate of the largest eigenvalue of a PSD matrix."""
    size = gram.shape[0]
    vector = np.random.default_rng(0).standard_normal(size)
    vector /= np.linalg.norm(vector)
    estimate = 0.0
    for _ in range(POWER_ITERATIONS):
        product = gram @ vector
        norm = np.linalg.norm(product)
        if norm == 0.0:
            return 0.0
        vector = product / norm
        rayleigh = float(vector @ gram @ vector)
        if abs(rayleigh - estimate) <= POWER_TOLERANCE * max(1.0, abs(rayleigh)):
            estimate = rayleigh
            break
        estimate = rayleigh
    return estimate


def sparse_finetune(Z, X, sae_lambda: float, iters: int) -> SparseCode:
    """Fit sparse feature weights by ISTA.

    Args:
        Z: N×q random feature codes.
        X: N×D training inputs.
        sae_lambda: L1 weight, non-negative.
        iters: Number of ISTA iterations, at least 1.

    Returns:
        SparseCode with the D×q fine-tuned weight.
    """
    Z = np.asarray(Z, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    if iters < 1:
        raise ParameterError(f"iters must be at least 1, got {iters}")
    if sae_lambda < 0:
        raise ParameterError(f"sae_lambda must be non-negative, got {sae_lambda}")
    if Z.ndim != 2 or X.ndim != 2 or Z.shape[0] != X.shape[0]:
        raise ShapeError(f"Z {Z.shape} and X {X.shape} must be matrices with equal row counts")
    if not (np.all(np.isfinite(Z)) and np.all(np.isfinite(X))):
        raise NumericError("sparse fine-tuning received non-finite values")

    q, dim = Z.shape[1], X.shape[1]
    if not np.any(Z):
        logger.warning("Sparse fine-tuning skipped: feature codes are all zero")
        zeros = np.zeros((q, dim))
        return SparseCode(zeros.T.copy(), True, lasso_objective(Z, X, zeros, sae_lambda), 0.0)

    gram = Z.T @ Z
    lipschitz = LIPSCHITZ_MARGIN * largest_eigenvalue(gram)
    correlation = Z.T @ X
    threshold = sae_lambda / (2.0 * lipschitz)

    weights = np.zeros((q, dim))
    for _ in range(int(iters)):
        weights = soft_threshold(weights - (gram @ weights - correlation) / lipschitz, threshold)

    objective = lasso_objective(Z, X, weights, sae_lambda)
    logger.debug("ISTA: %d iterations, L=%.4g, objective=%.6g", iters, lipschitz, objective)
    return SparseCode(weights.T.copy(), False, objective, lipschitz)
