"""
Activation registry.

Feature nodes may use any registered activation; enhancement nodes need a
nonlinearity, so "linear" is rejected for them.
"""

from typing import Callable

import numpy as np
from scipy.special import expit

from apps.core.exceptions import ParameterError


def _linear(values: np.ndarray) -> np.ndarray:
    return values


def _relu(values: np.ndarray) -> np.ndarray:
    return np.maximum(values, 0.0)


ACTIVATIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "linear": _linear,
    "tanh": np.tanh,
    "sigmoid": expit,
    "relu": _relu,
}

FEATURE_ACTIVATIONS = ("linear", "tanh", "sigmoid", "relu")
ENHANCEMENT_ACTIVATIONS = ("tanh", "sigmoid", "relu")


def get_activation(name: str) -> Callable[[np.ndarray], np.ndarray]:
    """Look up an activation function by name."""
    try:
        return ACTIVATIONS[name]
    except KeyError:
        raise ParameterError(
            f"Unknown activation '{name}'. Available: {', '.join(ACTIVATIONS)}"
        ) from None
