"""
Experiment configuration.

Hyper-parameter overrides use short symbol names, e.g.
``q=10,n=20,r=400,cs=1e3,ct=10,sigma=0.1``. An experiment manifest is a JSON
document:

    {
      "domains": [{"name": "A", "path": "amazon.csv", "num_classes": 10}, ...],
      "methods": ["bls_source_only", "dabls"],
      "hyperparams": {"q": 10, "n": 20, "cs": 1000},
      "fraction": 0.1,
      "seeds": [0, 1, 2],
      "fractions": [0.1, 0.2, 0.3],
      "grid": {"values": {"sigma": [0.01, 0.1, 1]}, "mode": "holdout", "repeats": 1},
      "sensitivity": {"parameter": "sigma", "values": [0.01, 0.1, 1]},
      "jobs": 1
    }

Relative domain paths resolve against the manifest's directory.
"""

import json
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from django.conf import settings

from apps.adaptation.services.hyperparams import HyperParams
from apps.core.exceptions import (
    DatasetFormatError,
    DatasetNotFoundError,
    ParameterError,
)
from apps.core.seeding import validate_seed
from apps.datasets.services.loader import DomainManifest, manifest_from_dict
from apps.experiments.services.runner import METHODS

logger = logging.getLogger(__name__)

# Flag name -> (target, field)
HYPERPARAM_ALIASES = {
    "cs": ("da", "c_s"),
    "c_s": ("da", "c_s"),
    "ct": ("da", "c_t"),
    "c_t": ("da", "c_t"),
    "c_T": ("da", "c_t"),
    "sigma": ("da", "sigma"),
    "tau0": ("da", "tau0"),
    "k": ("da", "k"),
    "lle_reg": ("da", "lle_reg"),
    "normalization": ("da", "normalization"),
    "class_weighting": ("da", "class_weighting"),
    "n": ("bls", "n"),
    "q": ("bls", "q"),
    "m": ("bls", "m"),
    "r": ("bls", "r"),
    "lambda": ("bls", "ridge_lambda"),
    "ridge_lambda": ("bls", "ridge_lambda"),
    "s": ("bls", "enhancement_scale"),
    "enhancement_scale": ("bls", "enhancement_scale"),
    "sae_lambda": ("bls", "sae_lambda"),
    "sae_iters": ("bls", "sae_iters"),
    "feature_activation": ("bls", "feature_activation"),
    "enhancement_activation": ("bls", "enhancement_activation"),
}

INT_FIELDS = {"n", "q", "m", "r", "k", "sae_iters"}
STR_FIELDS = {"normalization", "feature_activation", "enhancement_activation"}
BOOL_FIELDS = {"class_weighting"}
TRUE_WORDS = {"1", "true", "yes", "on"}
FALSE_WORDS = {"0", "false", "no", "off"}


def _convert(field_name: str, raw):
    if raw is None:
        if field_name == "tau0":
            return None
        raise ParameterError(f"{field_name} needs a value")
    if field_name in STR_FIELDS:
        return str(raw)
    if field_name in BOOL_FIELDS:
        if isinstance(raw, bool):
            return raw
        word = str(raw).strip().lower()
        if word in TRUE_WORDS | FALSE_WORDS:
            return word in TRUE_WORDS
        raise ParameterError(f"{field_name} must be a boolean, got '{raw}'")
    if field_name == "tau0" and str(raw).strip().lower() in ("none", "auto", ""):
        return None

    try:
        value = float(raw)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"{field_name} must be a number, got '{raw}'") from exc
    if field_name in INT_FIELDS:
        if not value.is_integer():
            raise ParameterError(f"{field_name} must be an integer, got '{raw}'")
        return int(value)
    return value


def parse_overrides(text: str | None) -> dict:
    """Parse ``"q=10,cs=1e3"`` into ``{"q": "10", "cs": "1e3"}``."""
    overrides = {}
    if not text:
        return overrides
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep:
            raise ParameterError(f"hyper-parameter override '{item}' must look like name=value")
        overrides[name.strip()] = value.strip()
    return overrides


def apply_overrides(overrides: dict, base: HyperParams | None = None) -> HyperParams:
    """Return ``base`` with ``overrides`` applied and validated.

    Raises:
        ParameterError: On an unknown name or an invalid value.
    """
    base = base or HyperParams.from_settings()
    da_values, bls_values = {}, {}
    for name, raw in overrides.items():
        if name not in HYPERPARAM_ALIASES:
            raise ParameterError(
                f"unknown hyper-parameter '{name}'; expected one of {sorted(HYPERPARAM_ALIASES)}"
            )
        target, field_name = HYPERPARAM_ALIASES[name]
        values = bls_values if target == "bls" else da_values
        values[field_name] = _convert(field_name, raw)

    bls = replace(base.bls, **bls_values) if bls_values else base.bls
    return replace(base, bls=bls, **da_values)


@dataclass
class ExperimentConfig:
    domains: list[DomainManifest] = field(default_factory=list)
    methods: tuple[str, ...] = ("dabls",)
    hyperparams: HyperParams = field(default_factory=HyperParams.from_settings)
    fraction: float = 0.1
    seeds: tuple[int, ...] = (0,)
    fractions: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5)
    grid: dict | None = None
    sensitivity: dict | None = None
    jobs: int = 1

    def __post_init__(self):
        for method in self.methods:
            if method not in METHODS:
                raise ParameterError(f"method must be one of {METHODS}, got '{method}'")
        self.seeds = tuple(validate_seed(seed) for seed in self.seeds)
        if not 0.0 < float(self.fraction) < 1.0:
            raise ParameterError(f"labeled fraction must lie in (0, 1), got {self.fraction}")

    def pair(self) -> tuple[DomainManifest, DomainManifest]:
        """Source and target manifests for single-task experiments."""
        if len(self.domains) < 2:
            raise ParameterError("experiment needs a source and a target domain")
        return self.domains[0], self.domains[1]

    def to_dict(self) -> dict:
        return {
            "domains": [domain.to_dict() for domain in self.domains],
            "methods": list(self.methods),
            "hyperparams": self.hyperparams.to_dict(),
            "fraction": self.fraction,
            "seeds": list(self.seeds),
            "fractions": list(self.fractions),
            "grid": self.grid,
            "sensitivity": self.sensitivity,
            "jobs": self.jobs,
        }


def default_fraction() -> float:
    return float(getattr(settings, "EXPERIMENT_LABELED_FRACTION", 0.1))


def _hyperparams_from_payload(payload) -> HyperParams:
    if not payload:
        return HyperParams.from_settings()
    # A stored config echo carries the full nested form
    if "bls" in payload and isinstance(payload["bls"], dict):
        return HyperParams.from_dict(payload)
    return apply_overrides(payload)


def experiment_config_from_dict(payload: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Build an ExperimentConfig from a manifest payload."""
    if not isinstance(payload, dict):
        raise DatasetFormatError("experiment manifest must be a JSON object")

    domains = [manifest_from_dict(item, base_dir) for item in payload.get("domains", [])]
    methods = payload.get("methods") or payload.get("method") or ["dabls"]
    if isinstance(methods, str):
        methods = [methods]

    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(payload) - known - {"method"}
    if unknown:
        logger.warning("Ignoring unknown manifest keys: %s", ", ".join(sorted(unknown)))

    config = ExperimentConfig(
        domains=domains,
        methods=tuple(methods),
        hyperparams=_hyperparams_from_payload(payload.get("hyperparams")),
        fraction=float(payload.get("fraction", default_fraction())),
        seeds=tuple(payload.get("seeds", (0,))),
        fractions=tuple(float(f) for f in payload.get("fractions", ExperimentConfig.fractions)),
        grid=payload.get("grid"),
        sensitivity=payload.get("sensitivity"),
        jobs=int(payload.get("jobs", 1)),
    )
    return config


def load_experiment_config(path) -> ExperimentConfig:
    """Read an experiment manifest from disk.

    Raises:
        DatasetNotFoundError: If the manifest file does not exist.
        DatasetFormatError: If it is not valid JSON.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetNotFoundError(f"manifest file not found: {path}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"manifest {path} is not valid JSON: {exc}") from exc
    return experiment_config_from_dict(payload, base_dir=path.parent)


def parse_grid_values(text: str) -> dict:
    """Parse ``"n=10,20;cs=1,10"`` into ``{"n": [10, 20], "c_s": [1.0, 10.0]}``."""
    values = {}
    for item in (text or "").split(";"):
        item = item.strip()
        if not item:
            continue
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or name not in HYPERPARAM_ALIASES:
            raise ParameterError(f"grid entry '{item}' must look like name=v1,v2 with a known name")
        _, field_name = HYPERPARAM_ALIASES[name]
        if field_name == "ridge_lambda":
            raise ParameterError("lambda cannot be searched by the grid")
        values[field_name] = [_convert(field_name, value.strip()) for value in raw.split(",") if value.strip()]
    if not values:
        raise ParameterError("grid specification is empty")
    return values
