"""
Ordered parallel map over independent units of work.

Units run on joblib threads; numpy's kernels release the GIL, and results
come back in submission order so the output does not depend on ``jobs``.
"""

import logging
from typing import Callable, Sequence

from django.conf import settings
from joblib import Parallel, delayed

from apps.core.exceptions import ParameterError

logger = logging.getLogger(__name__)


def default_jobs() -> int:
    return int(getattr(settings, "EXPERIMENT_DEFAULT_JOBS", 1))


def run_ordered(func: Callable, units: Sequence[tuple], jobs: int | None = None) -> list:
    """Apply ``func(*unit)`` to every unit and return the results in order."""
    jobs = default_jobs() if jobs is None else int(jobs)
    if jobs == 0 or jobs < -1:
        raise ParameterError(f"jobs must be a positive integer or -1, got {jobs}")
    if jobs == 1 or len(units) <= 1:
        return [func(*unit) for unit in units]

    logger.debug("Running %d units on %d workers", len(units), jobs)
    return Parallel(n_jobs=jobs, prefer="threads")(delayed(func)(*unit) for unit in units)

