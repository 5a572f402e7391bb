"""
Hyper-parameters of the domain-adaptation trainer.

    c_s    — source error weight
    c_t    — target error weight
    sigma  — manifold (LLE graph) weight
    tau0   — class-imbalance scale; None means the mean class size of each partition
    k      — LLE neighbour count
    bls    — hidden-layer structure (BlsConfig)

Defaults come from ``DABLS_*`` / ``LLE_*`` settings: c_s=1e3, c_t=10,
sigma=0.1, k=5.
"""

from dataclasses import asdict, dataclass, field, fields, replace

from django.conf import settings

from apps.bls.services.config import BlsConfig
from apps.core.exceptions import ParameterError
from apps.datasets.services.normalizer import NORMALIZATION_MODES, default_normalization


def _setting(name: str, default):
    return getattr(settings, name, default)


@dataclass(frozen=True)
class HyperParams:
    c_s: float = 1e3
    c_t: float = 10.0
    sigma: float = 0.1
    tau0: float | None = None
    k: int = 5
    lle_reg: float = 1e-3
    class_weighting: bool = True
    normalization: str = "zscore"
    bls: BlsConfig = field(default_factory=BlsConfig)

    def __post_init__(self):
        for name in ("c_s", "c_t", "sigma"):
            value = getattr(self, name)
            if not value >= 0:
                raise ParameterError(f"{name} must be non-negative, got {value}")
        if self.tau0 is not None and not self.tau0 > 0:
            raise ParameterError(f"tau0 must be positive, got {self.tau0}")
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k}")
        if not self.lle_reg >= 0:
            raise ParameterError(f"lle_reg must be non-negative, got {self.lle_reg}")
        if self.normalization not in NORMALIZATION_MODES:
            raise ParameterError(
                f"normalization must be one of {NORMALIZATION_MODES}, got '{self.normalization}'"
            )

    @classmethod
    def from_settings(cls, bls: BlsConfig | None = None, **overrides) -> "HyperParams":
        tau0 = _setting("DABLS_IMBALANCE_SCALE", None)
        values = {
            "c_s": float(_setting("DABLS_SOURCE_WEIGHT", cls.c_s)),
            "c_t": float(_setting("DABLS_TARGET_WEIGHT", cls.c_t)),
            "sigma": float(_setting("DABLS_MANIFOLD_WEIGHT", cls.sigma)),
            "tau0": float(tau0) if tau0 is not None else None,
            "k": int(_setting("LLE_NEIGHBORS", cls.k)),
            "lle_reg": float(_setting("LLE_REGULARIZATION", cls.lle_reg)),
            "class_weighting": bool(_setting("DABLS_CLASS_WEIGHTING", cls.class_weighting)),
            "normalization": default_normalization(),
            "bls": bls or BlsConfig.from_settings(),
        }
        values.update(overrides)
        return cls(**values)

    @classmethod
    def from_dict(cls, payload: dict) -> "HyperParams":
        known = {f.name for f in fields(cls)} - {"bls"}
        values = {k: v for k, v in payload.items() if k in known}
        bls = BlsConfig.from_dict(payload.get("bls", {}))
        return cls(bls=bls, **values)

    def with_seed(self, seed: int) -> "HyperParams":
        return replace(self, bls=self.bls.with_seed(seed))

    def to_dict(self) -> dict:
        return asdict(self)
