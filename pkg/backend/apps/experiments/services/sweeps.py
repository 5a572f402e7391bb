"""Accuracy sweeps over the labeled fraction and single hyper-parameters."""

import logging
from dataclasses import replace

from apps.adaptation.services.hyperparams import HyperParams
from apps.core.exceptions import ParameterError
from apps.datasets.services.loader import Dataset
from apps.experiments.services.parallel import run_ordered
from apps.experiments.services.reports import AVERAGE_ROW, ResultTable, mean_std
from apps.experiments.services.runner import check_compatible, check_method, run_task, task_name

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("c_s", "c_t", "sigma", "k", "tau0")


def _summarise(label: str, keys: list, methods: tuple, results: list, per_key: int) -> list[dict]:
    """Fold ordered results (key-major, then seed, then method) into rows."""
    rows = []
    width = per_key * len(methods)
    for position, key in enumerate(keys):
        block = results[position * width:(position + 1) * width]
        row = {label: key}
        for offset, method in enumerate(methods):
            scores = [result.accuracy for result in block[offset::len(methods)]]
            row[f"{method}_accuracy"], row[f"{method}_std"] = mean_std(scores)
        rows.append(row)

    average = {label: AVERAGE_ROW}
    for method in methods:
        column = [row[f"{method}_accuracy"] for row in rows]
        average[f"{method}_accuracy"] = mean_std(column)[0]
    rows.append(average)
    return rows


def _columns(label: str, methods: tuple) -> list[str]:
    columns = [label]
    for method in methods:
        columns += [f"{method}_accuracy", f"{method}_std"]
    return columns


def sweep_labeled_fraction(
    source: Dataset,
    target: Dataset,
    hp: HyperParams,
    fractions: list[float],
    seeds: list[int],
    methods: tuple[str, ...] = ("dabls",),
    jobs: int | None = None,
) -> ResultTable:
    """Mean ± std accuracy per labeled fraction, one run per (fraction, seed, method).

    Raises:
        ParameterError: If a fraction lies outside (0, 1) or a list is empty.
    """
    check_compatible(source, target)
    methods = tuple(check_method(method) for method in methods)
    if not fractions or not seeds:
        raise ParameterError("fraction sweep needs at least one fraction and one seed")
    fractions = [float(fraction) for fraction in fractions]
    for fraction in fractions:
        if not 0.0 < fraction < 1.0:
            raise ParameterError(f"labeled fraction must lie in (0, 1), got {fraction}")

    logger.info(
        "Fraction sweep %s: %d fractions × %d seeds", task_name(source, target), len(fractions), len(seeds)
    )
    units = [
        (source, target, hp, fraction, seed, method)
        for fraction in fractions
        for seed in seeds
        for method in methods
    ]
    results = run_ordered(run_task, units, jobs)
    return ResultTable(
        title=f"labeled fraction {task_name(source, target)}",
        columns=_columns("fraction", methods),
        rows=_summarise("fraction", fractions, methods, results, len(seeds)),
        meta={"seeds": list(seeds), "hyperparams": hp.to_dict()},
    )


def sweep_hyperparameter(
    source: Dataset,
    target: Dataset,
    hp: HyperParams,
    name: str,
    values: list,
    fraction: float,
    seeds: list[int],
    jobs: int | None = None,
) -> ResultTable:
    """Sensitivity of domain-adaptive accuracy to one hyper-parameter.

    Args:
        name: One of c_s, c_t (c_T accepted), sigma, k, tau0.
        values: Values substituted into ``hp`` one at a time.
    """
    check_compatible(source, target)
    name = "c_t" if name in ("c_T", "ct") else "c_s" if name == "cs" else name
    if name not in SWEEP_PARAMETERS:
        raise ParameterError(f"cannot sweep '{name}'; expected one of {SWEEP_PARAMETERS}")
    if not values or not seeds:
        raise ParameterError("sensitivity sweep needs at least one value and one seed")

    if name == "k":
        if any(float(value) != int(value) for value in values):
            raise ParameterError(f"k values must be integers, got {values}")
        values = [int(value) for value in values]

    # Validates every value before any fitting starts
    candidates = [replace(hp, **{name: value}) for value in values]

    logger.info(
        "Sensitivity sweep %s over %s: %d values × %d seeds",
        task_name(source, target), name, len(values), len(seeds),
    )
    units = [
        (source, target, candidate, fraction, seed, "dabls")
        for candidate in candidates
        for seed in seeds
    ]
    results = run_ordered(run_task, units, jobs)
    return ResultTable(
        title=f"sensitivity {name} {task_name(source, target)}",
        columns=_columns(name, ("dabls",)),
        rows=_summarise(name, list(values), ("dabls",), results, len(seeds)),
        meta={"parameter": name, "fraction": float(fraction), "seeds": list(seeds)},
    )
