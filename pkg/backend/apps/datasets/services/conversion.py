"""
Conversion of numpy archives into the canonical domain CSV.

Feature extraction tools commonly hand over ``.npz`` archives holding a
feature matrix and a label vector. Labels may be 1-based; pass
``label_offset=1`` to shift them to 0-based.
"""

import logging
import zipfile
from pathlib import Path

import numpy as np

from apps.core.exceptions import DatasetFormatError, DatasetNotFoundError
from apps.datasets.services.loader import Dataset, write_domain_csv

logger = logging.getLogger(__name__)


def convert_npz(
    input_path,
    output_path,
    features_key: str = "features",
    labels_key: str = "labels",
    label_offset: int = 0,
    domain_name: str = "",
) -> Dataset:
    """Read ``features_key``/``labels_key`` from an archive and write a domain CSV.

    Returns:
        The converted Dataset.
    """
    input_path = Path(input_path)
    if not input_path.is_file():
        raise DatasetNotFoundError(f"archive not found: {input_path}")

    try:
        with np.load(input_path, allow_pickle=False) as archive:
            missing = [key for key in (features_key, labels_key) if key not in archive.files]
            if missing:
                raise DatasetFormatError(
                    f"{input_path} lacks arrays {missing}; available: {sorted(archive.files)}"
                )
            features = np.asarray(archive[features_key], dtype=np.float64)
            raw_labels = np.asarray(archive[labels_key]).reshape(-1)
    except (OSError, ValueError, zipfile.BadZipFile) as exc:
        raise DatasetFormatError(f"cannot read {input_path}: {exc}") from exc

    if not np.all(np.equal(np.mod(raw_labels, 1), 0)):
        raise DatasetFormatError(f"{input_path}: labels are not integers")
    labels = raw_labels.astype(np.int64) - int(label_offset)

    dataset = Dataset(
        features=features,
        labels=labels,
        num_classes=int(labels.max()) + 1 if labels.size else 1,
        domain_name=domain_name or input_path.stem,
    )
    write_domain_csv(dataset, output_path)
    logger.info(
        "Converted %s → %s (N=%d, D=%d, C=%d)",
        input_path, output_path, dataset.num_samples, dataset.num_features, dataset.num_classes,
    )
    return dataset
