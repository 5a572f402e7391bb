"""
Cross-domain task runner.

A task is an ordered (source, target) pair. Each run:
  1. Splits the target into labeled / unlabeled parts (stratified, seeded)
  2. Fits the chosen method (normaliser included)
  3. Predicts the unlabeled target rows and scores them against held truth

Wall-clock time is measured around fit and around predict separately.
"""

import logging
import time
from itertools import permutations

from apps.adaptation.services.dabls import dabls_fit, dabls_predict
from apps.adaptation.services.hyperparams import HyperParams
from apps.bls.services.model import bls_predict, fit_bls
from apps.core.exceptions import ParameterError, ProtocolError, ShapeError
from apps.core.seeding import derive_seed, validate_seed
from apps.datasets.services.loader import Dataset, DomainManifest
from apps.datasets.services.splits import TargetSplit, stratified_split
from apps.experiments.services.metrics import accuracy, per_class_recall
from apps.experiments.services.parallel import run_ordered
from apps.experiments.services.reports import ExperimentReport, TaskResult

logger = logging.getLogger(__name__)

METHODS = ("dabls", "bls_source_only")

# Sub-stream keys under a task seed
SPLIT_STREAM = 0
MODEL_STREAM = 1


def task_name(source: Dataset, target: Dataset) -> str:
    return f"{source.domain_name}→{target.domain_name}"


def check_method(method: str) -> str:
    if method not in METHODS:
        raise ParameterError(f"method must be one of {METHODS}, got '{method}'")
    return method


def check_compatible(source: Dataset, target: Dataset) -> None:
    if source.num_features != target.num_features:
        raise ShapeError(
            f"domains disagree on D: {source.domain_name} has {source.num_features}, "
            f"{target.domain_name} has {target.num_features}"
        )
    if source.num_classes != target.num_classes:
        raise ShapeError(
            f"domains disagree on C: {source.domain_name} has {source.num_classes}, "
            f"{target.domain_name} has {target.num_classes}"
        )


def evaluate_split(
    source: Dataset,
    split: TargetSplit,
    hp: HyperParams,
    method: str,
    model_seed: int,
    truth=None,
    features=None,
):
    """Fit ``method`` and score it on the split's unlabeled rows.

    ``features``/``truth`` replace the evaluation rows when given (the grid
    search scores on an inner holdout this way).

    Returns:
        ``(accuracy, predictions, truth, fit_seconds, predict_seconds)``
    """
    features = split.unlabeled_features if features is None else features
    truth = split.unlabeled_truth if truth is None else truth
    if truth.shape[0] == 0:
        raise ProtocolError("nothing left to evaluate: the unlabeled target part is empty")

    started = time.perf_counter()
    if method == "dabls":
        model = dabls_fit(source, split.labeled, hp, model_seed)
    else:
        model = fit_bls(source, hp.bls.with_seed(model_seed), hp.normalization)
    fit_seconds = time.perf_counter() - started

    started = time.perf_counter()
    if method == "dabls":
        _, predictions = dabls_predict(model, features)
    else:
        _, predictions = bls_predict(model, features)
    predict_seconds = time.perf_counter() - started

    return accuracy(predictions, truth), predictions, truth, fit_seconds, predict_seconds


def run_task(
    source: Dataset,
    target: Dataset,
    hp: HyperParams,
    fraction: float,
    seed: int,
    method: str = "dabls",
) -> TaskResult:
    """Run one cross-domain task.

    Args:
        source: Fully labeled source domain.
        target: Target domain; only ``fraction`` of each class is labeled.
        hp: Hyper-parameters (``bls_source_only`` uses only ``hp.bls`` and
            ``hp.normalization``).
        fraction: Labeled fraction of the target, in (0, 1).
        seed: Task seed; the split and the model draw from separate streams.
        method: ``dabls`` or ``bls_source_only``.

    Returns:
        TaskResult with accuracy, per-class recall and wall times.
    """
    check_method(method)
    check_compatible(source, target)
    seed = validate_seed(seed)

    split = stratified_split(target, fraction, derive_seed(seed, SPLIT_STREAM))
    score, predictions, truth, fit_seconds, predict_seconds = evaluate_split(
        source, split, hp, method, derive_seed(seed, MODEL_STREAM)
    )

    result = TaskResult(
        task=task_name(source, target),
        source=source.domain_name,
        target=target.domain_name,
        method=method,
        seed=seed,
        fraction=float(fraction),
        accuracy=score,
        fit_seconds=fit_seconds,
        predict_seconds=predict_seconds,
        labeled_count=split.labeled.num_samples,
        unlabeled_count=split.num_unlabeled,
        class_recall=per_class_recall(predictions, truth),
        hyperparams=hp.to_dict(),
    )
    logger.info(
        "%s [%s] seed=%d: accuracy=%.4f fit=%.3fs predict=%.3fs",
        result.task, method, seed, score, fit_seconds, predict_seconds,
    )
    return result


def ordered_pairs(datasets: list[Dataset]) -> list[tuple[Dataset, Dataset]]:
    """All (source, target) pairs with source ≠ target, in manifest order."""
    return list(permutations(datasets, 2))


def load_domains(manifests: list[DomainManifest]) -> list[Dataset]:
    """Load every domain up front so a missing file fails before any task runs."""
    if len(manifests) < 2:
        raise ParameterError(f"a benchmark needs at least 2 domains, got {len(manifests)}")
    names = [manifest.name for manifest in manifests]
    if len(set(names)) != len(names):
        raise ParameterError(f"domain names must be distinct, got {names}")

    datasets = [manifest.load() for manifest in manifests]
    for other in datasets[1:]:
        check_compatible(datasets[0], other)
    return datasets


def run_benchmark(
    manifests: list[DomainManifest],
    hp: HyperParams,
    fraction: float,
    seeds: list[int],
    methods: tuple[str, ...] = ("dabls",),
    jobs: int | None = None,
    datasets: list[Dataset] | None = None,
) -> ExperimentReport:
    """Run every ordered domain pair for every seed and method.

    Both methods of one (task, seed) see the same split. Results are
    ordered by task, then seed, then method.

    Raises:
        DatasetNotFoundError: If a domain file is missing (before any task runs).
    """
    methods = tuple(check_method(method) for method in methods)
    if not methods:
        raise ParameterError("at least one method is required")
    if not seeds:
        raise ParameterError("at least one seed is required")
    seeds = [validate_seed(seed) for seed in seeds]

    datasets = datasets if datasets is not None else load_domains(manifests)
    pairs = ordered_pairs(datasets)
    logger.info(
        "Benchmark: %d domains, %d tasks, %d seeds, methods=%s",
        len(datasets), len(pairs), len(seeds), ",".join(methods),
    )

    units = [
        (source, target, hp, fraction, derive_seed(seed, task_index), method)
        for task_index, (source, target) in enumerate(pairs)
        for seed in seeds
        for method in methods
    ]
    results = run_ordered(run_task, units, jobs)

    config = {
        "domains": [manifest.to_dict() for manifest in manifests] if manifests else
                   [dataset.domain_name for dataset in datasets],
        "methods": list(methods),
        "fraction": float(fraction),
        "seeds": seeds,
        "hyperparams": hp.to_dict(),
    }
    return ExperimentReport(results=results, config=config)
