"""
Closed-form ridge regression for the output layer.

W = (AᵀA + λI)⁻¹AᵀY, solved by Cholesky factorisation. With λ = 0 and a
rank-deficient (or numerically singular) Gram matrix the solve falls back to
the pseudo-inverse of A; with λ > 0 a factorisation that fails on round-off
is retried through the thin SVD of A.
"""

import logging

import numpy as np
from scipy import linalg

from apps.core.exceptions import NumericError, ParameterError, ShapeError

logger = logging.getLogger(__name__)


def _check_finite(name: str, array: np.ndarray) -> None:
    if not np.all(np.isfinite(array)):
        raise NumericError(f"{name} contains non-finite values")


def cholesky_solve(lhs: np.ndarray, rhs: np.ndarray, context: str = "system") -> np.ndarray:
    """Solve ``lhs @ X = rhs`` for a symmetric positive-definite ``lhs``."""
    try:
        factor = linalg.cho_factor(lhs, lower=False, check_finite=True)
        solution = linalg.cho_solve(factor, rhs, check_finite=False)
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericError(f"Cholesky factorisation of the {context} failed: {exc}") from exc
    _check_finite(f"{context} solution", solution)
    return solution


def _is_well_conditioned(gram: np.ndarray) -> bool:
    """Cheap rank test from the Cholesky diagonal."""
    try:
        upper, _ = linalg.cho_factor(gram, check_finite=False)
    except linalg.LinAlgError:
        return False
    diagonal = np.abs(np.diag(upper))
    if diagonal.size == 0 or diagonal.max() == 0.0:
        return False
    ratio = (diagonal.min() / diagonal.max()) ** 2
    return ratio > np.finfo(np.float64).eps * gram.shape[0]


def svd_ridge(A: np.ndarray, Y: np.ndarray, ridge_lambda: float) -> np.ndarray:
    """Ridge solution V·diag(s / (s² + λ))·UᵀY from the thin SVD of A."""
    try:
        U, s, Vt = linalg.svd(A, full_matrices=False, check_finite=False)
    except linalg.LinAlgError as exc:
        raise NumericError(f"SVD of the hidden matrix failed: {exc}") from exc
    weights = Vt.T @ ((s / (s * s + ridge_lambda))[:, None] * (U.T @ Y))
    _check_finite("ridge solution", weights)
    return weights


def bls_train(A, Y, ridge_lambda: float) -> np.ndarray:
    """Solve the BLS output weights.

    Args:
        A: N×F hidden matrix.
        Y: N×C one-hot targets.
        ridge_lambda: λ ≥ 0.

    Returns:
        F×C weight matrix.

    Raises:
        NumericError: On non-finite inputs or a failed factorisation.
    """
    A = np.asarray(A, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if A.ndim != 2 or Y.ndim != 2 or A.shape[0] != Y.shape[0]:
        raise ShapeError(f"A {A.shape} and Y {Y.shape} must be matrices with equal row counts")
    if not ridge_lambda >= 0:
        raise ParameterError(f"ridge lambda must be non-negative, got {ridge_lambda}")
    _check_finite("hidden matrix", A)
    _check_finite("target matrix", Y)

    gram = A.T @ A
    if ridge_lambda == 0 and not _is_well_conditioned(gram):
        logger.info("Gram matrix is rank deficient with λ=0; using the pseudo-inverse")
        weights = linalg.pinv(A) @ Y
        _check_finite("pseudo-inverse solution", weights)
        return weights

    gram[np.diag_indices_from(gram)] += ridge_lambda
    try:
        return cholesky_solve(gram, A.T @ Y, context="ridge system")
    except NumericError:
        logger.info("Ridge system is numerically singular at λ=%g; solving through the SVD", ridge_lambda)
    return svd_ridge(A, Y, ridge_lambda)
