"""
Domain dataset ingestion.

Canonical on-disk layout is one CSV per domain:

    label,f_1,f_2,...,f_D

Labels are 0-based integers. A header row is optional and is recognised by
a non-numeric first cell on the first row. Every other row must have the
same width; the loader reports the offending line on ragged or unparsable
rows.
"""

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from apps.core.exceptions import (
    DatasetFormatError,
    DatasetNotFoundError,
    EmptyDatasetError,
    LabelRangeError,
    ShapeError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dataset:
    """One domain's feature matrix and integer labels.

    Arrays are stored read-only; derive new datasets with ``subset``.
    """

    features: np.ndarray
    labels: np.ndarray
    num_classes: int
    domain_name: str = ""

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64, copy=True, ndmin=2)
        labels = np.array(self.labels, dtype=np.int64, copy=True).reshape(-1)

        if features.ndim != 2:
            raise ShapeError(f"features must be a matrix, got {features.ndim} dimensions")
        if features.shape[0] != labels.shape[0]:
            raise ShapeError(
                f"features have {features.shape[0]} rows but labels have {labels.shape[0]} entries"
            )
        if labels.shape[0] == 0:
            raise EmptyDatasetError(f"dataset '{self.domain_name}' has no samples")
        if self.num_classes < 1:
            raise LabelRangeError(f"num_classes must be at least 1, got {self.num_classes}")
        if labels.min() < 0 or labels.max() >= self.num_classes:
            raise LabelRangeError(
                f"labels must lie in [0, {self.num_classes}), "
                f"found range [{labels.min()}, {labels.max()}]"
            )
        if not np.all(np.isfinite(features)):
            raise DatasetFormatError(f"dataset '{self.domain_name}' contains non-finite features")

        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "num_classes", int(self.num_classes))

    @property
    def num_samples(self) -> int:
        return self.features.shape[0]

    @property
    def num_features(self) -> int:
        return self.features.shape[1]

    def class_counts(self) -> np.ndarray:
        """Sample count per class, length ``num_classes``."""
        return np.bincount(self.labels, minlength=self.num_classes)

    def subset(self, indices, domain_name: str | None = None) -> "Dataset":
        """Return a new Dataset holding the rows at ``indices``."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            features=self.features[indices],
            labels=self.labels[indices],
            num_classes=self.num_classes,
            domain_name=domain_name or self.domain_name,
        )

    def __repr__(self):
        return (
            f"Dataset(domain_name={self.domain_name!r}, N={self.num_samples}, "
            f"D={self.num_features}, C={self.num_classes})"
        )


@dataclass(frozen=True)
class DomainManifest:
    """Pointer to a domain CSV: ``{"name", "path", "num_classes"}``."""

    name: str
    path: Path
    num_classes: int | None = None
    extra: dict = field(default_factory=dict)

    def load(self) -> Dataset:
        return load_domain_csv(self.path, self.name, num_classes=self.num_classes)

    def to_dict(self) -> dict:
        return {"name": self.name, "path": str(self.path), "num_classes": self.num_classes}


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------

def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _parse_label(cell: str, line: int) -> int:
    try:
        value = float(cell)
    except ValueError as exc:
        raise DatasetFormatError(f"label '{cell}' is not numeric", line=line) from exc
    if not math.isfinite(value) or not value.is_integer():
        raise DatasetFormatError(f"label '{cell}' is not an integer", line=line)
    if value < 0:
        raise LabelRangeError(f"line {line}: label {int(value)} is negative")
    return int(value)


def _parse_features(cells: list[str], line: int, first_column: int) -> list[float]:
    values = []
    for column, cell in enumerate(cells, start=first_column):
        try:
            value = float(cell)
        except ValueError as exc:
            raise DatasetFormatError(
                f"column {column}: cell '{cell}' is not numeric", line=line
            ) from exc
        if not math.isfinite(value):
            raise DatasetFormatError(f"column {column}: non-finite value '{cell}'", line=line)
        values.append(value)
    return values


def _read_rows(path: Path, has_labels: bool):
    """Yield ``(line_number, label_or_None, features)`` for each data row."""
    width = None
    first_row = True
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        for row in reader:
            line = reader.line_num
            cells = [cell.strip() for cell in row]
            if not cells or all(not cell for cell in cells):
                continue
            if first_row:
                first_row = False
                if not _is_number(cells[0]):
                    logger.debug("Skipping header row in %s", path)
                    continue
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise DatasetFormatError(
                    f"row has {len(cells)} columns, expected {width}", line=line
                )
            if has_labels:
                if len(cells) < 2:
                    raise DatasetFormatError("row needs a label and at least one feature", line=line)
                yield line, _parse_label(cells[0], line), _parse_features(cells[1:], line, 2)
            else:
                yield line, None, _parse_features(cells, line, 1)


def _check_exists(path: Path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise DatasetNotFoundError(f"dataset file not found: {path}")
    return path


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def load_domain_csv(path, domain_name: str = "", num_classes: int | None = None) -> Dataset:
    """Load one domain from the canonical label-first CSV layout.

    Args:
        path: CSV file path.
        domain_name: Tag stored on the dataset (defaults to the file stem).
        num_classes: Class count override; by default max label + 1.

    Returns:
        The loaded Dataset.

    Raises:
        DatasetNotFoundError: If the file does not exist.
        DatasetFormatError: On ragged rows or unparsable cells (names the line).
        EmptyDatasetError: If the file holds no data rows.
        LabelRangeError: If a label is negative or not below ``num_classes``.
    """
    path = _check_exists(path)
    domain_name = domain_name or path.stem

    labels: list[int] = []
    rows: list[list[float]] = []
    for _line, label, features in _read_rows(path, has_labels=True):
        labels.append(label)
        rows.append(features)

    if not rows:
        raise EmptyDatasetError(f"dataset file {path} contains no samples")

    label_array = np.asarray(labels, dtype=np.int64)
    inferred = int(label_array.max()) + 1
    if num_classes is None:
        num_classes = inferred
    elif inferred > num_classes:
        raise LabelRangeError(
            f"{path}: label {inferred - 1} is out of range for num_classes={num_classes}"
        )

    dataset = Dataset(
        features=np.asarray(rows, dtype=np.float64),
        labels=label_array,
        num_classes=num_classes,
        domain_name=domain_name,
    )
    logger.info(
        "Loaded domain %s from %s (N=%d, D=%d, C=%d)",
        dataset.domain_name, path, dataset.num_samples, dataset.num_features, dataset.num_classes,
    )
    return dataset


def write_domain_csv(dataset: Dataset, path) -> Path:
    """Write ``dataset`` in the canonical CSV layout without a header.

    Features are written with 17 significant digits so a reload reproduces
    them exactly.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([dataset.labels.astype(np.float64), dataset.features])
    fmt = ["%d"] + ["%.17g"] * dataset.num_features
    np.savetxt(path, table, fmt=fmt, delimiter=",")
    logger.debug("Wrote %d rows to %s", dataset.num_samples, path)
    return path


def load_feature_matrix(path, has_labels: bool = False, num_features: int | None = None):
    """Load a prediction input file.

    Unlike ``load_domain_csv`` a file with no rows is accepted and returns an
    empty ``0×num_features`` matrix.

    Args:
        path: CSV file path.
        has_labels: Whether the first column holds labels.
        num_features: Expected feature count; checked when given.

    Returns:
        Tuple ``(features, labels)``; ``labels`` is None when ``has_labels`` is False.
    """
    path = _check_exists(path)
    labels: list[int] = []
    rows: list[list[float]] = []
    for _line, label, features in _read_rows(path, has_labels=has_labels):
        rows.append(features)
        if has_labels:
            labels.append(label)

    if rows:
        features = np.asarray(rows, dtype=np.float64)
    else:
        features = np.zeros((0, num_features or 0), dtype=np.float64)

    if num_features is not None and rows and features.shape[1] != num_features:
        raise ShapeError(
            f"{path}: expected {num_features} feature columns, found {features.shape[1]}"
        )

    label_array = np.asarray(labels, dtype=np.int64) if has_labels else None
    return features, label_array


def load_manifest(path) -> DomainManifest:
    """Load a single domain manifest JSON document."""
    path = Path(path)
    if not path.is_file():
        raise DatasetNotFoundError(f"manifest file not found: {path}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"manifest {path} is not valid JSON: {exc}") from exc
    return manifest_from_dict(payload, base_dir=path.parent)


def manifest_from_dict(payload: dict, base_dir: Path | None = None) -> DomainManifest:
    """Build a DomainManifest, resolving relative paths against ``base_dir``."""
    try:
        name = str(payload["name"])
        raw_path = Path(payload["path"])
    except (KeyError, TypeError) as exc:
        raise DatasetFormatError(f"domain manifest needs 'name' and 'path': {payload!r}") from exc

    if not raw_path.is_absolute() and base_dir is not None:
        raw_path = Path(base_dir) / raw_path

    num_classes = payload.get("num_classes")
    extra = {k: v for k, v in payload.items() if k not in ("name", "path", "num_classes")}
    return DomainManifest(
        name=name,
        path=raw_path,
        num_classes=int(num_classes) if num_classes is not None else None,
        extra=extra,
    )


def validate_domain_shape(
    dataset: Dataset,
    expected_samples: int | None = None,
    expected_features: int | None = None,
    expected_classes: int | None = None,
) -> None:
    """Check a loaded domain against a published description.

    Raises:
        ShapeError: On the first mismatching dimension.
    """
    checks = (
        ("samples", expected_samples, dataset.num_samples),
        ("features", expected_features, dataset.num_features),
        ("classes", expected_classes, dataset.num_classes),
    )
    for label, expected, actual in checks:
        if expected is not None and expected != actual:
            raise ShapeError(
                f"domain '{dataset.domain_name}': expected {expected} {label}, found {actual}"
            )
