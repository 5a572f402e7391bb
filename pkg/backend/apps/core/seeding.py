"""
Seed derivation.

All randomness flows from one root seed. Independent streams for tasks,
grid points and repeats are derived with numpy's ``SeedSequence`` so the
value a unit receives depends only on its keys, never on execution order.
"""

import numpy as np

from apps.core.exceptions import ParameterError


def validate_seed(seed: int) -> int:
    """Return ``seed`` as an int or raise ParameterError if it is negative."""
    seed = int(seed)
    if seed < 0:
        raise ParameterError(f"seed must be non-negative, got {seed}")
    return seed


def derive_seed(root: int, *keys: int) -> int:
    """Derive a 64-bit child seed from ``root`` and integer ``keys``.

    Args:
        root: The root seed supplied by the caller.
        keys: Non-negative integers identifying the unit of work
            (task index, grid point index, repeat, ...).

    Returns:
        An integer in [0, 2**64).
    """
    entropy = [validate_seed(root), *(validate_seed(k) for k in keys)]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 32) | int(state[1])
