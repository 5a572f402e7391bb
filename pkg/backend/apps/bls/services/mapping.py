"""
Hidden-layer mapping of a Broad Learning System.

Pipeline:
  1. n feature groups:  M_j = φ(X·W_ej + b_ej),        W_ej ∈ D×q, b_ej ∈ 1×q
  2. optional sparse fine-tuning of each W_ej on the training inputs
  3. m enhancement groups: E_i = ξ(Mⁿ·W_hi + b_hi),   W_hi ∈ nq×r, b_hi ∈ 1×r
  4. A = [Mⁿ | Eᵐ]

All weights are drawn uniformly from [−1, 1] with one seeded generator in
the fixed order (W_e1, b_e1, ..., W_en, b_en, W_h1, b_h1, ...). Each W_hi is
column-normalised to unit norm and multiplied by the enhancement scale.
"""

import logging
from dataclasses import dataclass

import numpy as np

from apps.bls.services.activations import get_activation
from apps.bls.services.config import BlsConfig
from apps.bls.services.sparse import sparse_finetune
from apps.core.exceptions import ConfigurationError, NumericError, ParameterError, ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BlsMapping:
    """Frozen random (or fine-tuned) parameters of the hidden layer."""

    config: BlsConfig
    input_dim: int
    feature_weights: tuple[np.ndarray, ...]
    feature_biases: tuple[np.ndarray, ...]
    enhancement_weights: tuple[np.ndarray, ...]
    enhancement_biases: tuple[np.ndarray, ...]

    def __post_init__(self):
        cfg = self.config
        expected = (
            ("feature_weights", self.feature_weights, cfg.n, (self.input_dim, cfg.q)),
            ("feature_biases", self.feature_biases, cfg.n, (1, cfg.q)),
            ("enhancement_weights", self.enhancement_weights, cfg.m, (cfg.n * cfg.q, cfg.r)),
            ("enhancement_biases", self.enhancement_biases, cfg.m, (1, cfg.r)),
        )
        for name, arrays, count, shape in expected:
            if len(arrays) != count:
                raise ShapeError(f"{name}: expected {count} groups, got {len(arrays)}")
            for array in arrays:
                if array.shape != shape:
                    raise ShapeError(f"{name}: expected shape {shape}, got {array.shape}")
                if not np.all(np.isfinite(array)):
                    raise NumericError(f"{name} contains non-finite values")
                array.setflags(write=False)

        # Stacked copies used by the forward pass.
        object.__setattr__(self, "_feature_matrix", np.hstack(self.feature_weights))
        object.__setattr__(self, "_feature_bias", np.hstack(self.feature_biases))

    @property
    def num_hidden(self) -> int:
        return self.config.num_hidden


def _uniform(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, size=shape)


def init_mapping(input_dim: int, config: BlsConfig, train_features=None) -> BlsMapping:
    """Draw a new hidden-layer mapping.

    Args:
        input_dim: Feature dimension D.
        config: Structural hyper-parameters and seed.
        train_features: N×D training inputs; required when ``config.sae_iters > 0``.

    Returns:
        The BlsMapping.

    Raises:
        ConfigurationError: If sparse fine-tuning is requested without training inputs.
    """
    if int(input_dim) != input_dim or input_dim < 1:
        raise ParameterError(f"input dimension must be a positive integer, got {input_dim}")
    input_dim = int(input_dim)

    if config.sae_iters > 0:
        if train_features is None:
            raise ConfigurationError("sparse fine-tuning requested but no training features given")
        train_features = np.asarray(train_features, dtype=np.float64)
        if train_features.ndim != 2 or train_features.shape[1] != input_dim:
            raise ShapeError(
                f"training features must have D={input_dim} columns, got shape {train_features.shape}"
            )

    rng = np.random.default_rng(config.seed)

    feature_weights, feature_biases = [], []
    for group in range(config.n):
        weight = _uniform(rng, (input_dim, config.q))
        bias = _uniform(rng, (1, config.q))
        if config.sae_iters > 0:
            codes = train_features @ weight + bias
            fit = sparse_finetune(codes, train_features, config.sae_lambda, config.sae_iters)
            if fit.degenerate:
                logger.warning("Feature group %d kept its random weights (degenerate codes)", group)
            else:
                weight = fit.weights
        feature_weights.append(weight)
        feature_biases.append(bias)

    enhancement_weights, enhancement_biases = [], []
    for _ in range(config.m):
        weight = _uniform(rng, (config.n * config.q, config.r))
        weight = config.enhancement_scale * weight / np.linalg.norm(weight, axis=0, keepdims=True)
        enhancement_weights.append(weight)
        enhancement_biases.append(_uniform(rng, (1, config.r)))

    logger.debug(
        "Initialised mapping: D=%d, n=%d, q=%d, m=%d, r=%d, seed=%d, sae_iters=%d",
        input_dim, config.n, config.q, config.m, config.r, config.seed, config.sae_iters,
    )
    return BlsMapping(
        config=config,
        input_dim=input_dim,
        feature_weights=tuple(feature_weights),
        feature_biases=tuple(feature_biases),
        enhancement_weights=tuple(enhancement_weights),
        enhancement_biases=tuple(enhancement_biases),
    )


def feature_nodes(X, mapping: BlsMapping) -> np.ndarray:
    """Mⁿ = [φ(X·W_e1 + b_e1) | ... | φ(X·W_en + b_en)], N×nq."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != mapping.input_dim:
        actual = X.shape[1] if X.ndim == 2 else X.shape
        raise ShapeError(f"expected D={mapping.input_dim} input columns, got {actual}")
    activation = get_activation(mapping.config.feature_activation)
    return activation(X @ mapping._feature_matrix + mapping._feature_bias)


def enhancement_nodes(feature_matrix, mapping: BlsMapping) -> np.ndarray:
    """Eᵐ = [ξ(Mⁿ·W_h1 + b_h1) | ... | ξ(Mⁿ·W_hm + b_hm)], N×mr."""
    feature_matrix = np.asarray(feature_matrix, dtype=np.float64)
    expected = mapping.config.num_feature_columns
    if feature_matrix.ndim != 2 or feature_matrix.shape[1] != expected:
        raise ShapeError(f"expected {expected} feature-node columns, got shape {feature_matrix.shape}")
    activation = get_activation(mapping.config.enhancement_activation)
    groups = [
        activation(feature_matrix @ weight + bias)
        for weight, bias in zip(mapping.enhancement_weights, mapping.enhancement_biases)
    ]
    return np.hstack(groups)


def hidden(X, mapping: BlsMapping) -> np.ndarray:
    """A = [Mⁿ | Eᵐ], N×F."""
    features = feature_nodes(X, mapping)
    return np.hstack([features, enhancement_nodes(features, mapping)])
