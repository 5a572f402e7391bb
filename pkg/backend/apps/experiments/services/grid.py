"""
Hyper-parameter grid search for one cross-domain task.

Points are the Cartesian product of the value lists, enumerated by
sklearn's ParameterGrid (parameter names sorted, last name fastest). Each
point is scored as the mean accuracy over ``repeats`` seeded splits:

  holdout  fit on source + half the labeled target, score on the other half
  oracle   fit on source + all labeled target, score on the unlabeled target

Within a repeat every point sees the same split, so the two modes evaluate
a point identically on the test rows.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np
from sklearn.model_selection import ParameterGrid

from apps.adaptation.services.hyperparams import HyperParams
from apps.core.exceptions import ParameterError, ProtocolError
from apps.core.seeding import derive_seed, validate_seed
from apps.datasets.services.loader import Dataset
from apps.datasets.services.splits import stratified_split
from apps.experiments.services.parallel import run_ordered
from apps.experiments.services.reports import ResultTable, dumps, mean_std
from apps.experiments.services.runner import check_compatible, evaluate_split, task_name

logger = logging.getLogger(__name__)

GRID_MODES = ("holdout", "oracle")
BLS_PARAMETERS = ("n", "q", "r")
DA_PARAMETERS = ("c_s", "c_t", "sigma", "k", "tau0")
GRID_PARAMETERS = BLS_PARAMETERS + DA_PARAMETERS

# Seed streams under the grid seed
SPLIT_STREAM = 0
HOLDOUT_STREAM = 1
MODEL_STREAM = 2


@dataclass(frozen=True)
class GridSpec:
    values: dict
    mode: str = "holdout"
    repeats: int = 1
    seed: int = 0
    fraction: float = 0.1

    def __post_init__(self):
        if not self.values:
            raise ParameterError("grid needs at least one parameter")
        cleaned = {}
        for name, options in self.values.items():
            if name not in GRID_PARAMETERS:
                raise ParameterError(f"unknown grid parameter '{name}'; expected one of {GRID_PARAMETERS}")
            options = list(options) if isinstance(options, (list, tuple)) else [options]
            if not options:
                raise ParameterError(f"grid parameter '{name}' has no values")
            cleaned[name] = options
        object.__setattr__(self, "values", cleaned)

        if self.mode not in GRID_MODES:
            raise ParameterError(f"grid mode must be one of {GRID_MODES}, got '{self.mode}'")
        if int(self.repeats) != self.repeats or self.repeats < 1:
            raise ParameterError(f"repeats must be a positive integer, got {self.repeats}")
        validate_seed(self.seed)
        if not 0.0 < self.fraction < 1.0:
            raise ParameterError(f"labeled fraction must lie in (0, 1), got {self.fraction}")

    @classmethod
    def full_scope(cls, **options) -> "GridSpec":
        """Widest scopes for (n, q, r, c_s, c_t, sigma): 151 250 points."""
        values = {
            "n": list(range(10, 101, 10)),
            "q": list(range(10, 51, 10)),
            "r": list(range(200, 1001, 200)),
            "c_s": [10.0 ** p for p in range(-5, 6)],
            "c_t": [10.0 ** p for p in range(-5, 6)],
            "sigma": [10.0 ** p for p in range(-2, 3)],
        }
        return cls(values=values, **options)

    @property
    def size(self) -> int:
        return len(ParameterGrid(self.values))

    def points(self) -> list[dict]:
        return list(ParameterGrid(self.values))

    def to_dict(self) -> dict:
        return {
            "values": self.values,
            "mode": self.mode,
            "repeats": self.repeats,
            "seed": self.seed,
            "fraction": self.fraction,
        }


def point_hyperparams(base: HyperParams, point: dict) -> HyperParams:
    """Apply one grid point to ``base``; m is always 1."""
    bls_values = {name: point[name] for name in BLS_PARAMETERS if name in point}
    da_values = {name: point[name] for name in DA_PARAMETERS if name in point}
    return replace(base, bls=replace(base.bls, m=1, **bls_values), **da_values)


@dataclass
class GridResult:
    best_index: int
    best_point: dict
    best_hyperparams: HyperParams
    best_score: float
    table: ResultTable
    spec: GridSpec | None = field(default=None, repr=False)

    def scores(self) -> list[float]:
        return self.table.column("score")

    def to_dict(self) -> dict:
        return {
            "best_index": self.best_index,
            "best_point": self.best_point,
            "best_score": self.best_score,
            "best_hyperparams": self.best_hyperparams.to_dict(),
            "grid": self.spec.to_dict() if self.spec else None,
            "table": self.table.to_dict(),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def render(self, fmt: str) -> str:
        return self.table.to_csv() if fmt == "csv" else self.to_json()


def _repeat_splits(target: Dataset, grid: GridSpec) -> list[tuple]:
    """Per repeat: the test split and, in holdout mode, the inner split."""
    splits = []
    for repeat in range(grid.repeats):
        split = stratified_split(target, grid.fraction, derive_seed(grid.seed, SPLIT_STREAM, repeat))
        inner = None
        if grid.mode == "holdout":
            counts = split.labeled.class_counts()
            if np.any((counts > 0) & (counts < 2)):
                raise ProtocolError(
                    "holdout tuning needs at least 2 labeled target samples per class; "
                    f"got per-class counts {counts.tolist()}"
                )
            inner = stratified_split(split.labeled, 0.5, derive_seed(grid.seed, HOLDOUT_STREAM, repeat))
        splits.append((split, inner))
    return splits


def _score_point(source, splits, hp, mode, grid_seed, point_index) -> list[float]:
    scores = []
    for repeat, (split, inner) in enumerate(splits):
        model_seed = derive_seed(grid_seed, MODEL_STREAM, point_index, repeat)
        if mode == "holdout":
            score = evaluate_split(source, inner, hp, "dabls", model_seed)[0]
        else:
            score = evaluate_split(source, split, hp, "dabls", model_seed)[0]
        scores.append(score)
    return scores


def grid_search(
    source: Dataset,
    target: Dataset,
    grid: GridSpec,
    base: HyperParams | None = None,
    jobs: int | None = None,
) -> GridResult:
    """Score every grid point and return the best one with the full table.

    Ties go to the earliest point in enumeration order.

    Raises:
        ProtocolError: In holdout mode, if a labeled target class has fewer
            than 2 samples.
    """
    check_compatible(source, target)
    base = base or HyperParams.from_settings()
    points = grid.points()
    candidates = [point_hyperparams(base, point) for point in points]
    splits = _repeat_splits(target, grid)

    logger.info(
        "Grid search %s: %d points × %d repeats (%s mode)",
        task_name(source, target), len(points), grid.repeats, grid.mode,
    )
    units = [
        (source, splits, hp, grid.mode, grid.seed, index)
        for index, hp in enumerate(candidates)
    ]
    point_scores = run_ordered(_score_point, units, jobs)

    names = sorted(grid.values)
    rows = []
    for index, (point, scores) in enumerate(zip(points, point_scores)):
        score, score_std = mean_std(scores)
        rows.append({"index": index, **point, "score": score, "score_std": score_std})

    means = np.array([row["score"] for row in rows])
    best_index = int(np.argmax(means))
    table = ResultTable(
        title=f"grid {task_name(source, target)}",
        columns=["index", *names, "score", "score_std"],
        rows=rows,
        meta={"mode": grid.mode, "repeats": grid.repeats},
    )
    logger.info("Best grid point %d: %s (score=%.4f)", best_index, points[best_index], means[best_index])
    return GridResult(
        best_index=best_index,
        best_point=points[best_index],
        best_hyperparams=candidates[best_index],
        best_score=float(means[best_index]),
        table=table,
        spec=grid,
    )
