"""
Domain-adaptive broad learning with an LLE manifold regulariser.

Fit pipeline for a labeled source and a few labeled target samples:
  1. Normalise features on [source; labeled target]
  2. Build the LLE graph M and class-imbalance weights over the same rows
  3. Draw the hidden mapping and compute A_S, A_T
  4. Solve the closed form for the shared output weights W_T

Unlabeled target rows are mapped at predict time.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from apps.adaptation.services.hyperparams import HyperParams
from apps.adaptation.services.imbalance import ImbalanceWeights, imbalance_weights
from apps.adaptation.services.objective import DomainProblem, objective, solve_wt
from apps.bls.services.mapping import BlsMapping, hidden, init_mapping
from apps.bls.services.model import argmax_labels
from apps.core.exceptions import ConfigurationError, NumericError, ShapeError
from apps.core.seeding import validate_seed
from apps.datasets.services.labels import one_hot
from apps.datasets.services.loader import Dataset
from apps.datasets.services.normalizer import Normalizer, normalize_apply, normalize_fit
from apps.manifold.services.lle import build_lle_graph, empty_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DablsModel:
    mapping: BlsMapping
    normalizer: Normalizer
    weights: np.ndarray
    hyperparams: HyperParams
    num_classes: int
    training_summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.weights.shape != (self.mapping.num_hidden, self.num_classes):
            raise ShapeError(
                f"output weights must be {self.mapping.num_hidden}×{self.num_classes}, "
                f"got {self.weights.shape}"
            )
        if not np.all(np.isfinite(self.weights)):
            raise NumericError("output weights contain non-finite values")

    @property
    def input_dim(self) -> int:
        return self.mapping.input_dim


def _partition_weights(labels: np.ndarray, hp: HyperParams) -> ImbalanceWeights:
    if not hp.class_weighting:
        return ImbalanceWeights.uniform(labels.shape[0])
    return imbalance_weights(labels, hp.tau0)


def build_problem(
    source: Dataset,
    target_labeled: Dataset,
    hp: HyperParams,
    seed: int,
) -> tuple[DomainProblem, BlsMapping, Normalizer]:
    """Assemble normalised hidden matrices, graph and weights for one fit."""
    if target_labeled is None or target_labeled.num_samples == 0:
        raise ConfigurationError("domain adaptation needs at least one labeled target sample")
    if source.num_features != target_labeled.num_features:
        raise ShapeError(
            f"source has D={source.num_features}, labeled target has D={target_labeled.num_features}"
        )
    if source.num_classes != target_labeled.num_classes:
        raise ShapeError(
            f"source has C={source.num_classes}, labeled target has C={target_labeled.num_classes}"
        )

    train_features = np.vstack([source.features, target_labeled.features])
    normalizer = normalize_fit(train_features, mode=hp.normalization)
    train_features = normalize_apply(normalizer, train_features)
    source_features = train_features[: source.num_samples]
    target_features = train_features[source.num_samples:]

    logger.debug(
        "Step 1/3: LLE graph and imbalance weights over %d training rows", train_features.shape[0]
    )
    if hp.sigma > 0:
        graph = build_lle_graph(train_features, k=hp.k, reg=hp.lle_reg).graph
    else:
        graph = empty_graph(train_features.shape[0])

    logger.debug("Step 2/3: hidden mapping (F=%d)", hp.bls.num_hidden)
    mapping = init_mapping(
        source.num_features,
        hp.bls.with_seed(validate_seed(seed)),
        train_features=train_features,
    )

    problem = DomainProblem(
        source_hidden=hidden(source_features, mapping),
        source_targets=one_hot(source.labels, source.num_classes),
        target_hidden=hidden(target_features, mapping),
        target_targets=one_hot(target_labeled.labels, target_labeled.num_classes),
        graph=graph,
        source_weights=_partition_weights(source.labels, hp),
        target_weights=_partition_weights(target_labeled.labels, hp),
    )
    return problem, mapping, normalizer


def dabls_fit(source: Dataset, target_labeled: Dataset, hp: HyperParams, seed: int) -> DablsModel:
    """Train the domain-adaptive classifier.

    Args:
        source: Fully labeled source domain.
        target_labeled: Labeled part of the target domain.
        hp: Hyper-parameters; ``hp.bls.seed`` is replaced by ``seed``.
        seed: Seed for the hidden mapping.

    Returns:
        The fitted DablsModel.

    Raises:
        ConfigurationError: If the labeled target is empty.
        ShapeError: If D or C differ between the partitions.
        NumericError: If the closed-form solve fails.
    """
    problem, mapping, normalizer = build_problem(source, target_labeled, hp, seed)

    logger.debug("Step 3/3: solving the %d×%d closed-form system", problem.num_hidden, problem.num_hidden)
    weights = solve_wt(problem, hp)

    summary = {
        "source_domain": source.domain_name,
        "target_domain": target_labeled.domain_name,
        "source_samples": source.num_samples,
        "target_labeled_samples": target_labeled.num_samples,
        "k": hp.k if hp.sigma > 0 else None,
        "graph_nnz": int(problem.graph.nnz),
        "objective": objective(weights, problem, hp),
        "seed": int(seed),
    }
    logger.debug("Fitted domain-adaptive model: %s", summary)
    return DablsModel(
        mapping=mapping,
        normalizer=normalizer,
        weights=weights,
        hyperparams=hp.with_seed(seed),
        num_classes=source.num_classes,
        training_summary=summary,
    )


def dabls_predict(model: DablsModel, X) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(scores, labels)`` for unlabeled target rows."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.input_dim:
        raise ShapeError(f"expected D={model.input_dim} input columns, got shape {X.shape}")
    if X.shape[0] == 0:
        return np.zeros((0, model.num_classes)), np.zeros(0, dtype=np.int64)
    scores = hidden(normalize_apply(model.normalizer, X), model.mapping) @ model.weights
    return scores, argmax_labels(scores)
