"""
Weighted, manifold-regularised least squares for the shared output weights.

For output weights W (F×C):

    J(W) = ½‖W‖² + ½c_s‖δ_s(Y_S − A_S W)‖² + ½c_t‖δ_T(Y_T − A_T W)‖²
           + ½σ Tr((A W)ᵀ M (A W)),            A = [A_S; A_T]

    ∇J(W) = W + c_s A_Sᵀδ_s²(A_S W − Y_S) + c_t A_Tᵀδ_T²(A_T W − Y_T) + σ AᵀMAW

The unique minimiser solves (I + c_s A_Sᵀδ_s²A_S + c_t A_Tᵀδ_T²A_T + σAᵀMA) W
= c_s A_Sᵀδ_s²Y_S + c_t A_Tᵀδ_T²Y_T; the left-hand side is positive definite
whenever M is positive semidefinite.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from apps.adaptation.services.hyperparams import HyperParams
from apps.adaptation.services.imbalance import ImbalanceWeights
from apps.bls.services.ridge import cholesky_solve
from apps.core.exceptions import NumericError, ShapeError


@dataclass(frozen=True, eq=False)
class DomainProblem:
    """Training parts of one fit.

    The training matrix is always assembled here as [A_S; A_T], the row
    order the graph M was built in.
    """

    source_hidden: np.ndarray
    source_targets: np.ndarray
    target_hidden: np.ndarray
    target_targets: np.ndarray
    graph: object
    source_weights: ImbalanceWeights
    target_weights: ImbalanceWeights

    def __post_init__(self):
        a_s, y_s = self.source_hidden, self.source_targets
        a_t, y_t = self.target_hidden, self.target_targets
        if a_s.ndim != 2 or a_t.ndim != 2 or a_s.shape[1] != a_t.shape[1]:
            raise ShapeError(
                f"source term: hidden matrices {a_s.shape} and {a_t.shape} disagree on F"
            )
        if y_s.shape[0] != a_s.shape[0]:
            raise ShapeError(f"source term: A_S has {a_s.shape[0]} rows, Y_S has {y_s.shape[0]}")
        if y_t.shape[0] != a_t.shape[0]:
            raise ShapeError(f"target term: A_T has {a_t.shape[0]} rows, Y_T has {y_t.shape[0]}")
        if y_s.ndim != 2 or y_t.ndim != 2 or y_s.shape[1] != y_t.shape[1]:
            raise ShapeError(f"label matrices {y_s.shape} and {y_t.shape} disagree on C")
        if self.source_weights.tau.shape != (a_s.shape[0],):
            raise ShapeError("source term: imbalance weights do not match the source rows")
        if self.target_weights.tau.shape != (a_t.shape[0],):
            raise ShapeError("target term: imbalance weights do not match the target rows")
        rows = a_s.shape[0] + a_t.shape[0]
        if self.graph.shape != (rows, rows):
            raise ShapeError(f"manifold term: graph is {self.graph.shape}, expected {rows}×{rows}")

        for name, array in (
            ("A_S", a_s), ("Y_S", y_s), ("A_T", a_t), ("Y_T", y_t),
            ("δ_s", self.source_weights.tau), ("δ_T", self.target_weights.tau),
        ):
            if not np.all(np.isfinite(array)):
                raise NumericError(f"{name} contains non-finite values")

    @property
    def train_hidden(self) -> np.ndarray:
        return np.vstack([self.source_hidden, self.target_hidden])

    @property
    def num_hidden(self) -> int:
        return self.source_hidden.shape[1]

    @property
    def num_classes(self) -> int:
        return self.source_targets.shape[1]


def _check_weights(W: np.ndarray, problem: DomainProblem) -> np.ndarray:
    W = np.asarray(W, dtype=np.float64)
    expected = (problem.num_hidden, problem.num_classes)
    if W.shape != expected:
        raise ShapeError(f"regulariser term: W must be {expected}, got {W.shape}")
    return W


def _graph_product(graph, values: np.ndarray) -> np.ndarray:
    product = graph @ values
    return np.asarray(product.toarray() if sparse.issparse(product) else product)


def objective(W, problem: DomainProblem, hp: HyperParams) -> float:
    """Value of J at ``W``."""
    W = _check_weights(W, problem)
    source_residual = problem.source_targets - problem.source_hidden @ W
    target_residual = problem.target_targets - problem.target_hidden @ W
    outputs = problem.train_hidden @ W

    regulariser = np.sum(W * W)
    source_error = np.sum(problem.source_weights.squared[:, None] * source_residual**2)
    target_error = np.sum(problem.target_weights.squared[:, None] * target_residual**2)
    manifold = np.sum(outputs * _graph_product(problem.graph, outputs))
    return float(
        0.5 * (regulariser + hp.c_s * source_error + hp.c_t * target_error + hp.sigma * manifold)
    )


def objective_grad(W, problem: DomainProblem, hp: HyperParams) -> np.ndarray:
    """Gradient of J at ``W`` (F×C)."""
    W = _check_weights(W, problem)
    a_s, a_t, a_train = problem.source_hidden, problem.target_hidden, problem.train_hidden
    source_part = a_s.T @ (problem.source_weights.squared[:, None] * (a_s @ W - problem.source_targets))
    target_part = a_t.T @ (problem.target_weights.squared[:, None] * (a_t @ W - problem.target_targets))
    manifold_part = a_train.T @ _graph_product(problem.graph, a_train @ W)
    return W + hp.c_s * source_part + hp.c_t * target_part + hp.sigma * manifold_part


def normal_equations(problem: DomainProblem, hp: HyperParams) -> tuple[np.ndarray, np.ndarray]:
    """Return the symmetric left-hand matrix and right-hand side of the closed form."""
    a_s, a_t = problem.source_hidden, problem.target_hidden
    weighted_source = problem.source_weights.squared[:, None] * a_s
    weighted_target = problem.target_weights.squared[:, None] * a_t

    lhs = np.eye(problem.num_hidden)
    lhs += hp.c_s * (a_s.T @ weighted_source)
    lhs += hp.c_t * (a_t.T @ weighted_target)
    if hp.sigma > 0:
        a_train = problem.train_hidden
        lhs += hp.sigma * (a_train.T @ _graph_product(problem.graph, a_train))
    lhs = 0.5 * (lhs + lhs.T)

    rhs = hp.c_s * (weighted_source.T @ problem.source_targets)
    rhs += hp.c_t * (weighted_target.T @ problem.target_targets)
    return lhs, rhs


def solve_wt(problem: DomainProblem, hp: HyperParams) -> np.ndarray:
    """Closed-form minimiser of J by Cholesky factorisation.

    Raises:
        NumericError: If the system is not positive definite or not finite.
    """
    lhs, rhs = normal_equations(problem, hp)
    if not (np.all(np.isfinite(lhs)) and np.all(np.isfinite(rhs))):
        raise NumericError("domain-adaptation system contains non-finite values")
    return cholesky_solve(lhs, rhs, context="domain-adaptation system")
