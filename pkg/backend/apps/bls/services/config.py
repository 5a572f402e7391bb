"""
Structural and training hyper-parameters of a Broad Learning System.

Defaults come from settings (``BLS_*``) and match the operating point
n=20, q=10, m=1, r=400, linear feature maps and tanh enhancement nodes.
"""

from dataclasses import asdict, dataclass, fields, replace

from django.conf import settings

from apps.bls.services.activations import ENHANCEMENT_ACTIVATIONS, FEATURE_ACTIVATIONS
from apps.core.exceptions import ParameterError


def _setting(name: str, default):
    return getattr(settings, name, default)


@dataclass(frozen=True)
class BlsConfig:
    n: int = 20
    q: int = 10
    m: int = 1
    r: int = 400
    feature_activation: str = "linear"
    enhancement_activation: str = "tanh"
    enhancement_scale: float = 0.8
    sae_lambda: float = 1e-3
    sae_iters: int = 50
    ridge_lambda: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        for name in ("n", "q", "m", "r"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value}")
        if self.feature_activation not in FEATURE_ACTIVATIONS:
            raise ParameterError(
                f"feature_activation must be one of {FEATURE_ACTIVATIONS}, "
                f"got '{self.feature_activation}'"
            )
        if self.enhancement_activation not in ENHANCEMENT_ACTIVATIONS:
            raise ParameterError(
                f"enhancement_activation must be one of {ENHANCEMENT_ACTIVATIONS}, "
                f"got '{self.enhancement_activation}'"
            )
        if not self.enhancement_scale > 0:
            raise ParameterError(f"enhancement_scale must be positive, got {self.enhancement_scale}")
        if not self.sae_lambda >= 0:
            raise ParameterError(f"sae_lambda must be non-negative, got {self.sae_lambda}")
        if int(self.sae_iters) != self.sae_iters or self.sae_iters < 0:
            raise ParameterError(f"sae_iters must be a non-negative integer, got {self.sae_iters}")
        if not self.ridge_lambda >= 0:
            raise ParameterError(f"ridge_lambda must be non-negative, got {self.ridge_lambda}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ParameterError(f"seed must be a non-negative integer, got {self.seed}")

    @classmethod
    def from_settings(cls, **overrides) -> "BlsConfig":
        """Build a config from ``BLS_*`` settings, then apply ``overrides``."""
        values = {
            "n": int(_setting("BLS_FEATURE_GROUPS", cls.n)),
            "q": int(_setting("BLS_FEATURE_NODES", cls.q)),
            "m": int(_setting("BLS_ENHANCEMENT_GROUPS", cls.m)),
            "r": int(_setting("BLS_ENHANCEMENT_NODES", cls.r)),
            "feature_activation": _setting("BLS_FEATURE_ACTIVATION", cls.feature_activation),
            "enhancement_activation": _setting("BLS_ENHANCEMENT_ACTIVATION", cls.enhancement_activation),
            "enhancement_scale": float(_setting("BLS_ENHANCEMENT_SCALE", cls.enhancement_scale)),
            "sae_lambda": float(_setting("BLS_SAE_LAMBDA", cls.sae_lambda)),
            "sae_iters": int(_setting("BLS_SAE_ITERS", cls.sae_iters)),
            "ridge_lambda": float(_setting("BLS_RIDGE_LAMBDA", cls.ridge_lambda)),
        }
        values.update(overrides)
        return cls(**values)

    @classmethod
    def from_dict(cls, payload: dict) -> "BlsConfig":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in payload.items() if k in known})

    @property
    def num_feature_columns(self) -> int:
        return self.n * self.q

    @property
    def num_enhancement_columns(self) -> int:
        return self.m * self.r

    @property
    def num_hidden(self) -> int:
        """F = n·q + m·r."""
        return self.num_feature_columns + self.num_enhancement_columns

    def with_seed(self, seed: int) -> "BlsConfig":
        return replace(self, seed=int(seed))

    def to_dict(self) -> dict:
        return asdict(self)
