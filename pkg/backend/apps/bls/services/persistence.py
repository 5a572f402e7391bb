"""
Model files.

A model is stored as one numpy ``.npz`` archive (float64 arrays, no pickled
objects) plus a JSON metadata entry:

    metadata               JSON: format version, kind ("bls" | "dabls"),
                           BLS config, input dim, class count,
                           hyper-parameters (dabls only), training summary
    feature_weight_<j>     D×q      feature_bias_<j>      1×q
    enhancement_weight_<i> nq×r     enhancement_bias_<i>  1×r
    normalizer_mean        D        normalizer_std        D
    output_weights         F×C
"""

import json
import logging
import zipfile
from pathlib import Path

import numpy as np

from apps.bls.services.config import BlsConfig
from apps.bls.services.mapping import BlsMapping
from apps.bls.services.model import BlsModel
from apps.core.exceptions import DatasetFormatError, DatasetNotFoundError
from apps.datasets.services.normalizer import Normalizer

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
MODEL_KINDS = ("bls", "dabls")


def _model_kind(model) -> str:
    return "bls" if isinstance(model, BlsModel) else "dabls"


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"cannot serialise {type(value).__name__}")


def save_model(model, path) -> Path:
    """Write a BlsModel or DablsModel to ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mapping = model.mapping
    kind = _model_kind(model)

    metadata = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "input_dim": mapping.input_dim,
        "num_classes": model.num_classes,
        "bls": mapping.config.to_dict(),
        "training_summary": model.training_summary,
    }
    if kind == "dabls":
        metadata["hyperparams"] = model.hyperparams.to_dict()

    arrays = {
        "metadata": np.array(json.dumps(metadata, default=_json_default)),
        "normalizer_mean": model.normalizer.mean,
        "normalizer_std": model.normalizer.std,
        "output_weights": model.weights,
    }
    for j, (weight, bias) in enumerate(zip(mapping.feature_weights, mapping.feature_biases)):
        arrays[f"feature_weight_{j}"] = weight
        arrays[f"feature_bias_{j}"] = bias
    for i, (weight, bias) in enumerate(zip(mapping.enhancement_weights, mapping.enhancement_biases)):
        arrays[f"enhancement_weight_{i}"] = weight
        arrays[f"enhancement_bias_{i}"] = bias

    with open(path, "wb") as handle:
        np.savez(handle, **{k: np.ascontiguousarray(v) for k, v in arrays.items()})
    logger.info("Saved %s model to %s", kind, path)
    return path


def load_model(path):
    """Read a model written by ``save_model``.

    Returns:
        BlsModel or DablsModel depending on the stored kind.

    Raises:
        DatasetNotFoundError: If the file does not exist.
        DatasetFormatError: If the archive is unreadable or inconsistent.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetNotFoundError(f"model file not found: {path}")

    try:
        with np.load(path, allow_pickle=False) as archive:
            metadata = json.loads(str(archive["metadata"]))
            config = BlsConfig.from_dict(metadata["bls"])
            mapping = BlsMapping(
                config=config,
                input_dim=int(metadata["input_dim"]),
                feature_weights=tuple(archive[f"feature_weight_{j}"] for j in range(config.n)),
                feature_biases=tuple(archive[f"feature_bias_{j}"] for j in range(config.n)),
                enhancement_weights=tuple(archive[f"enhancement_weight_{i}"] for i in range(config.m)),
                enhancement_biases=tuple(archive[f"enhancement_bias_{i}"] for i in range(config.m)),
            )
            normalizer = Normalizer(mean=archive["normalizer_mean"], std=archive["normalizer_std"])
            weights = archive["output_weights"]
    except (OSError, ValueError, KeyError, zipfile.BadZipFile, json.JSONDecodeError) as exc:
        raise DatasetFormatError(f"cannot read model file {path}: {exc}") from exc

    kind = metadata.get("kind")
    if kind not in MODEL_KINDS:
        raise DatasetFormatError(f"{path}: unknown model kind {kind!r}")

    common = {
        "mapping": mapping,
        "normalizer": normalizer,
        "weights": weights,
        "num_classes": int(metadata["num_classes"]),
        "training_summary": metadata.get("training_summary", {}),
    }
    if kind == "bls":
        return BlsModel(**common)

    # Import here to avoid circular imports (adaptation builds on bls)
    from apps.adaptation.services.dabls import DablsModel
    from apps.adaptation.services.hyperparams import HyperParams

    return DablsModel(hyperparams=HyperParams.from_dict(metadata["hyperparams"]), **common)


def describe_model(model) -> dict:
    """Summary of a model for inspection output."""
    config = model.mapping.config
    summary = {
        "kind": _model_kind(model),
        "input_dim": model.mapping.input_dim,
        "num_classes": model.num_classes,
        "num_hidden": config.num_hidden,
        "bls": config.to_dict(),
        "output_weight_norm": float(np.linalg.norm(model.weights)),
        "output_weight_max_abs": float(np.max(np.abs(model.weights))) if model.weights.size else 0.0,
        "training_summary": model.training_summary,
    }
    if summary["kind"] == "dabls":
        summary["hyperparams"] = model.hyperparams.to_dict()
    return summary
