"""Run an ExperimentConfig as one of the experiment kinds."""

import logging

from apps.core.exceptions import ParameterError
from apps.experiments.services.config import ExperimentConfig
from apps.experiments.services.grid import GridSpec, grid_search
from apps.experiments.services.runner import load_domains, run_benchmark
from apps.experiments.services.sweeps import sweep_hyperparameter, sweep_labeled_fraction

logger = logging.getLogger(__name__)

EXPERIMENT_KINDS = ("bench", "grid", "sweep", "sensitivity")


def grid_spec(config: ExperimentConfig) -> GridSpec:
    options = dict(config.grid or {})
    common = {
        "mode": options.get("mode", "holdout"),
        "repeats": int(options.get("repeats", 1)),
        "seed": config.seeds[0],
        "fraction": config.fraction,
    }
    if options.get("full_scope"):
        return GridSpec.full_scope(**common)
    if not options.get("values"):
        raise ParameterError("grid experiments need 'grid.values' or 'grid.full_scope'")
    return GridSpec(values=options["values"], **common)


def execute_experiment(kind: str, config: ExperimentConfig, jobs: int | None = None):
    """Run ``config`` as ``kind`` and return its report or table.

    The returned object has ``to_dict()`` and ``render(fmt)``.
    """
    if kind not in EXPERIMENT_KINDS:
        raise ParameterError(f"experiment kind must be one of {EXPERIMENT_KINDS}, got '{kind}'")
    jobs = config.jobs if jobs is None else jobs

    if kind == "bench":
        return run_benchmark(
            config.domains, config.hyperparams, config.fraction, list(config.seeds),
            methods=config.methods, jobs=jobs,
        )

    # Single-task kinds validate their own options before loading data
    spec = grid_spec(config) if kind == "grid" else None
    if kind == "sensitivity":
        options = config.sensitivity or {}
        if "parameter" not in options or not options.get("values"):
            raise ParameterError("sensitivity experiments need 'sensitivity.parameter' and 'sensitivity.values'")

    source, target = load_domains(list(config.pair()))

    if kind == "grid":
        return grid_search(source, target, spec, base=config.hyperparams, jobs=jobs)
    if kind == "sweep":
        return sweep_labeled_fraction(
            source, target, config.hyperparams, list(config.fractions), list(config.seeds),
            methods=config.methods, jobs=jobs,
        )
    return sweep_hyperparameter(
        source, target, config.hyperparams,
        config.sensitivity["parameter"], list(config.sensitivity["values"]),
        config.fraction, list(config.seeds), jobs=jobs,
    )
